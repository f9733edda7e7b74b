#include "dcop/tables.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dcop {

bool Instantiation::contains(VariableId v) const { return valueOf(v) >= 0; }

int Instantiation::valueOf(VariableId v) const {
  for (const auto& [var, val] : entries)
    if (var == v) return val;
  return -1;
}

void Instantiation::set(VariableId v, int value) {
  for (auto& [var, val] : entries) {
    if (var == v) {
      val = value;
      return;
    }
  }
  entries.emplace_back(v, value);
}

Instantiation Instantiation::projectedOnto(std::span<const VariableId> vars) const {
  Instantiation out;
  for (const auto& e : entries)
    if (std::find(vars.begin(), vars.end(), e.first) != vars.end()) out.entries.push_back(e);
  return out;
}

UtilityTable UtilityTable::zeros(std::vector<Dim> dims) {
  UtilityTable t;
  std::size_t cells = 1;
  for (const auto& d : dims) {
    if (d.size <= 0) throw std::invalid_argument("dimension size must be positive");
    cells *= static_cast<std::size_t>(d.size);
  }
  t.dims_ = std::move(dims);
  t.values_.assign(cells, 0);
  return t;
}

UtilityTable UtilityTable::scalar(Cost v) {
  UtilityTable t;
  t.values_[0] = v;
  return t;
}

Cost UtilityTable::scalarValue() const {
  if (!dims_.empty()) throw std::logic_error("scalarValue on a table with dimensions");
  return values_[0];
}

int UtilityTable::indexOfVar(VariableId v) const {
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (dims_[i].var == v) return static_cast<int>(i);
  return -1;
}

std::size_t UtilityTable::offsetOf(std::span<const int> coords) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i)
    off = off * static_cast<std::size_t>(dims_[i].size) + static_cast<std::size_t>(coords[i]);
  return off;
}

void UtilityTable::coordsOf(std::size_t offset, std::span<int> out) const {
  for (std::size_t i = dims_.size(); i-- > 0;) {
    out[i] = static_cast<int>(offset % static_cast<std::size_t>(dims_[i].size));
    offset /= static_cast<std::size_t>(dims_[i].size);
  }
}

namespace {

// Strides of each table dim within an enclosing dim list; 0 for absent dims.
std::vector<std::size_t> stridesWithin(const std::vector<Dim>& outer, const UtilityTable& t) {
  std::vector<std::size_t> stride(outer.size(), 0);
  const auto& td = t.dims();
  std::vector<std::size_t> own(td.size());
  std::size_t s = 1;
  for (std::size_t i = td.size(); i-- > 0;) {
    own[i] = s;
    s *= static_cast<std::size_t>(td[i].size);
  }
  for (std::size_t o = 0; o < outer.size(); ++o) {
    for (std::size_t i = 0; i < td.size(); ++i) {
      if (td[i].var == outer[o].var) {
        if (td[i].size != outer[o].size)
          throw std::invalid_argument("domain size conflict for shared variable");
        stride[o] = own[i];
      }
    }
  }
  return stride;
}

bool advance(std::vector<int>& coords, const std::vector<Dim>& dims) {
  for (std::size_t i = dims.size(); i-- > 0;) {
    if (++coords[i] < dims[i].size) return true;
    coords[i] = 0;
  }
  return false;
}

}  // namespace

UtilityTable join(const UtilityTable& a, const UtilityTable& b) {
  std::vector<Dim> dims = a.dims();
  for (const auto& d : b.dims())
    if (a.indexOfVar(d.var) < 0) dims.push_back(d);
  UtilityTable out = UtilityTable::zeros(dims);
  auto sa = stridesWithin(dims, a);
  auto sb = stridesWithin(dims, b);
  std::vector<int> coords(dims.size(), 0);
  std::size_t off = 0;
  do {
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      ia += sa[i] * static_cast<std::size_t>(coords[i]);
      ib += sb[i] * static_cast<std::size_t>(coords[i]);
    }
    out.cell(off++) = a.cell(ia) + b.cell(ib);
  } while (advance(coords, dims));
  return out;
}

std::pair<UtilityTable, ArgTable> eliminateMin(const UtilityTable& t, VariableId var) {
  int pos = t.indexOfVar(var);
  if (pos < 0) throw std::invalid_argument("eliminateMin: variable not in table");
  std::vector<Dim> rd = t.dims();
  const int dsize = rd[static_cast<std::size_t>(pos)].size;
  rd.erase(rd.begin() + pos);
  UtilityTable out = UtilityTable::zeros(rd);
  ArgTable arg{rd, std::vector<int>(out.cellCount(), 0)};
  std::vector<int> coords(rd.size(), 0);
  std::vector<int> full(t.dims().size(), 0);
  std::size_t off = 0;
  do {
    for (std::size_t i = 0, j = 0; i < t.dims().size(); ++i)
      full[i] = (static_cast<int>(i) == pos) ? 0 : coords[j++];
    Cost best = std::numeric_limits<Cost>::max();
    int bestV = 0;
    for (int v = 0; v < dsize; ++v) {
      full[static_cast<std::size_t>(pos)] = v;
      Cost c = t.cell(t.offsetOf(full));
      if (c < best) {
        best = c;
        bestV = v;
      }
    }
    out.cell(off) = best;
    arg.best[off] = bestV;
    ++off;
  } while (advance(coords, rd));
  return {std::move(out), std::move(arg)};
}

UtilityTable condition(const UtilityTable& t, const Instantiation& ins) {
  std::vector<Dim> rd;
  std::vector<int> fixed(t.dims().size(), -1);
  bool any = false;
  for (std::size_t i = 0; i < t.dims().size(); ++i) {
    int v = ins.valueOf(t.dims()[i].var);
    if (v >= 0) {
      if (v >= t.dims()[i].size) throw std::out_of_range("condition: value outside domain");
      fixed[i] = v;
      any = true;
    } else {
      rd.push_back(t.dims()[i]);
    }
  }
  if (!any) return t;
  UtilityTable out = UtilityTable::zeros(rd);
  std::vector<int> coords(rd.size(), 0);
  std::vector<int> full(t.dims().size(), 0);
  std::size_t off = 0;
  do {
    for (std::size_t i = 0, j = 0; i < t.dims().size(); ++i)
      full[i] = (fixed[i] >= 0) ? fixed[i] : coords[j++];
    out.cell(off++) = t.cell(t.offsetOf(full));
  } while (advance(coords, rd));
  return out;
}

UtilityTable normalized(const UtilityTable& t) {
  std::vector<Dim> dims = t.dims();
  std::sort(dims.begin(), dims.end(), [](const Dim& a, const Dim& b) { return a.var < b.var; });
  if (dims == t.dims()) return t;
  UtilityTable out = UtilityTable::zeros(dims);
  auto st = stridesWithin(dims, t);
  std::vector<int> coords(dims.size(), 0);
  std::size_t off = 0;
  do {
    std::size_t it = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) it += st[i] * static_cast<std::size_t>(coords[i]);
    out.cell(off++) = t.cell(it);
  } while (advance(coords, dims));
  return out;
}

int lookupBest(const ArgTable& arg, const Instantiation& context) {
  std::vector<int> coords(arg.dims.size());
  for (std::size_t i = 0; i < arg.dims.size(); ++i) {
    int v = context.valueOf(arg.dims[i].var);
    if (v < 0) throw std::invalid_argument("lookupBest: context missing a dimension");
    coords[i] = v;
  }
  std::size_t off = 0;
  for (std::size_t i = 0; i < arg.dims.size(); ++i)
    off = off * static_cast<std::size_t>(arg.dims[i].size) + static_cast<std::size_t>(coords[i]);
  return arg.best[off];
}

BoundedResult joinBounded(const BoundedResult& a, const BoundedResult& b) {
  BoundedResult out;
  out.table = join(a.table, b.table);
  const auto& dims = out.table.dims();
  auto remap = [&](const UtilityTable& src, const std::vector<int>& plane) {
    auto st = stridesWithin(dims, src);
    std::vector<int> mapped(out.table.cellCount());
    std::vector<int> coords(dims.size(), 0);
    std::size_t off = 0;
    do {
      std::size_t is = 0;
      for (std::size_t i = 0; i < dims.size(); ++i) is += st[i] * static_cast<std::size_t>(coords[i]);
      mapped[off++] = plane[is];
    } while (advance(coords, dims));
    return mapped;
  };
  for (const auto& [var, plane] : a.planes) out.planes.emplace_back(var, remap(a.table, plane));
  for (const auto& [var, plane] : b.planes) out.planes.emplace_back(var, remap(b.table, plane));
  return out;
}

BoundedResult eliminateMinBounded(const BoundedResult& r, VariableId var, bool recordVar,
                                  ArgTable* argOut) {
  auto [reduced, arg] = eliminateMin(r.table, var);
  BoundedResult out;
  out.table = std::move(reduced);
  // Planes follow the minimizing slice of the eliminated variable.
  if (!r.planes.empty() || recordVar) {
    const int pos = r.table.indexOfVar(var);
    std::vector<int> full(r.table.dims().size());
    std::vector<int> coords(out.table.dims().size(), 0);
    std::vector<std::vector<int>> mapped(r.planes.size(), std::vector<int>(out.table.cellCount()));
    std::size_t off = 0;
    if (out.table.cellCount() > 0) {
      do {
        for (std::size_t i = 0, j = 0; i < full.size(); ++i)
          full[i] = (static_cast<int>(i) == pos) ? arg.best[off] : coords[j++];
        std::size_t src = r.table.offsetOf(full);
        for (std::size_t pi = 0; pi < r.planes.size(); ++pi) mapped[pi][off] = r.planes[pi].second[src];
        ++off;
      } while (advance(coords, out.table.dims()));
    }
    for (std::size_t pi = 0; pi < r.planes.size(); ++pi)
      out.planes.emplace_back(r.planes[pi].first, std::move(mapped[pi]));
    if (recordVar) out.planes.emplace_back(var, arg.best);
  }
  if (argOut) *argOut = std::move(arg);
  return out;
}

}  // namespace dcop
