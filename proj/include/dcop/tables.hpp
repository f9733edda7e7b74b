#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dcop/model.hpp"

namespace dcop {

struct Dim {
  VariableId var;
  int size;
  bool operator==(const Dim&) const = default;
};

/// Ordered partial assignment. Entry order is the root-to-leaf augmentation
/// order in which values were fixed.
struct Instantiation {
  std::vector<std::pair<VariableId, int>> entries;

  bool contains(VariableId v) const;
  int valueOf(VariableId v) const;  // -1 when absent
  void set(VariableId v, int value);
  Instantiation projectedOnto(std::span<const VariableId> vars) const;
  bool operator==(const Instantiation&) const = default;
};

/// Dense cost table in row-major order over an ordered dimension list.
/// A table with no dimensions is a scalar holding one cell.
class UtilityTable {
 public:
  UtilityTable() : values_(1, 0) {}
  static UtilityTable zeros(std::vector<Dim> dims);
  static UtilityTable scalar(Cost v);

  const std::vector<Dim>& dims() const { return dims_; }
  int dimCount() const { return static_cast<int>(dims_.size()); }
  std::size_t cellCount() const { return values_.size(); }
  Cost cell(std::size_t i) const { return values_[i]; }
  Cost& cell(std::size_t i) { return values_[i]; }
  const std::vector<Cost>& values() const { return values_; }
  Cost scalarValue() const;

  int indexOfVar(VariableId v) const;  // -1 when absent
  std::size_t offsetOf(std::span<const int> coords) const;
  void coordsOf(std::size_t offset, std::span<int> out) const;

 private:
  std::vector<Dim> dims_;
  std::vector<Cost> values_;
};

/// Per-cell minimizing value recorded by eliminateMin; dims are the residual
/// dimensions of the reduced table.
struct ArgTable {
  std::vector<Dim> dims;
  std::vector<int> best;
};

/// Cell-wise sum; dims are a's dims followed by b's new dims.
UtilityTable join(const UtilityTable& a, const UtilityTable& b);

/// Min-project var out. Ties go to the smallest value index.
std::pair<UtilityTable, ArgTable> eliminateMin(const UtilityTable& t, VariableId var);

/// Slice at the instantiated values; variables absent from t are ignored.
UtilityTable condition(const UtilityTable& t, const Instantiation& ins);

/// Same table with dims reordered ascending by variable id.
UtilityTable normalized(const UtilityTable& t);

/// Minimizing value for the cell addressed by the context (which must cover
/// every dimension of arg).
int lookupBest(const ArgTable& arg, const Instantiation& context);

/// Bounded inference result: a cost table plus, for selected variables already
/// minimized out below, the per-cell minimizing value.
struct BoundedResult {
  UtilityTable table;
  std::vector<std::pair<VariableId, std::vector<int>>> planes;
};

/// Join of tables with plane re-indexing onto the joint cells.
BoundedResult joinBounded(const BoundedResult& a, const BoundedResult& b);

/// eliminateMin on the table; planes follow the minimizing slice. When
/// recordVar is true the eliminated variable's argmin is appended as a plane.
BoundedResult eliminateMinBounded(const BoundedResult& r, VariableId var, bool recordVar,
                                  ArgTable* argOut = nullptr);

}  // namespace dcop
