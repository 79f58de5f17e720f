#include "lyutab/sqmod.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace lyutab {

namespace {

std::size_t subset_count(int n) { return std::size_t{1} << n; }

/// Sorted indices of the generators whose degree satisfies `keep`.
template <class Pred>
std::vector<std::size_t> select_generators(const std::vector<Subset>& degrees, Pred keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (keep(degrees[i])) out.push_back(i);
  }
  return out;
}

std::size_t position_of(const std::vector<std::size_t>& sorted, std::size_t global) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), global);
  if (it == sorted.end() || *it != global) throw InvariantError("generator missing from a local basis");
  return static_cast<std::size_t>(it - sorted.begin());
}

template <class K>
using Vector = std::vector<typename K::Element>;

template <class K>
Vector<K> apply(const K& field, const Matrix<K>& m, const Vector<K>& v) {
  Vector<K> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!K::is_zero(m(r, c)) && !K::is_zero(v[c])) out[r] = field.add(out[r], field.mul(m(r, c), v[c]));
    }
  }
  return out;
}

template <class K>
struct Generator {
  Subset degree;
  Vector<K> element;
};

/// Minimal generators of a squarefree module: at each degree, unit vectors completing the
/// span of everything multiplied in from the degrees just below.
template <class K>
std::vector<Generator<K>> minimal_generators(const K& field, const SquarefreeModule<K>& module) {
  const int n = module.vertex_count();
  std::vector<Generator<K>> out;
  for (Subset g : all_subsets_canonical(n)) {
    const std::size_t d = module.dim(g);
    if (d == 0) continue;
    std::vector<Vector<K>> image;
    for (Subset rest = g; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      const Subset below = g & ~(Subset{1} << j);
      const auto& m = module.mult(below, j);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Vector<K> col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = m(r, c);
        image.push_back(std::move(col));
      }
    }
    Matrix<K> rows(image.size(), d);
    for (std::size_t r = 0; r < image.size(); ++r) {
      for (std::size_t c = 0; c < d; ++c) rows(r, c) = image[r][c];
    }
    const auto e = row_reduce(field, std::move(rows));
    std::vector<char> covered(d, 0);
    for (auto p : e.pivots) covered[p] = 1;
    for (std::size_t k = 0; k < d; ++k) {
      if (covered[k]) continue;
      Vector<K> unit(d);
      unit[k] = K::one();
      out.push_back({g, std::move(unit)});
    }
  }
  return out;
}

/// A submodule of a free module, fiber by fiber: basis[G] has one row per generator in
/// local[G] and one column per basis vector of the submodule fiber.
template <class K>
struct FreeEmbedding {
  std::vector<std::vector<std::size_t>> local;
  std::vector<Matrix<K>> basis;
};

/// Dual basis at degree G of Hom(F_t, ω): generators whose degree contains the complement of G.
std::vector<std::size_t> dual_basis(const std::vector<Subset>& degrees, Subset g, Subset all) {
  const Subset complement = all & ~g;
  return select_generators(degrees, [complement](Subset d) { return is_subset(complement, d); });
}

/// δ^t at degree G: rows = dual basis of step t+1, cols = dual basis of step t.
template <class K>
Matrix<K> dual_differential(const FreeResolution<K>& res, int t, const std::vector<std::size_t>& source,
                            const std::vector<std::size_t>& target) {
  Matrix<K> out(target.size(), source.size());
  if (t + 1 > res.length()) return out;
  const auto& d = res.differentials[t + 1];
  for (std::size_t r = 0; r < target.size(); ++r) {
    for (std::size_t c = 0; c < source.size(); ++c) out(r, c) = d(source[c], target[r]);
  }
  return out;
}

/// Per-degree data of the dual complex Hom(F, ω) at one subset degree.
template <class K>
struct DualFiber {
  std::vector<std::vector<std::size_t>> bases;  // steps 0..n
  std::vector<Matrix<K>> coboundaries;          // δ^t, steps 0..n
};

template <class K>
DualFiber<K> dual_fiber(const FreeResolution<K>& res, Subset g) {
  const int n = res.n;
  const Subset all = full_set(n);
  DualFiber<K> fiber;
  fiber.bases.resize(n + 2);
  for (int t = 0; t <= n + 1; ++t) {
    if (t <= res.length()) fiber.bases[t] = dual_basis(res.degrees[t], g, all);
  }
  for (int t = 0; t <= n; ++t) {
    fiber.coboundaries.push_back(dual_differential(res, t, fiber.bases[t], fiber.bases[t + 1]));
  }
  return fiber;
}

template <class K>
std::vector<std::size_t> fiber_dims(const K& field, const DualFiber<K>& fiber, int n) {
  std::vector<std::size_t> ranks(n + 1);
  for (int t = 0; t <= n; ++t) ranks[t] = rank(field, fiber.coboundaries[t]);
  std::vector<std::size_t> out(n + 1);
  for (int t = 0; t <= n; ++t) {
    const std::size_t incoming = t > 0 ? ranks[t - 1] : 0;
    out[t] = fiber.bases[t].size() - ranks[t] - incoming;
  }
  return out;
}

}  // namespace

template <class K>
SquarefreeModule<K>::SquarefreeModule(int n) : n_(n) {
  if (n < 0 || n > kMaxModuleVertices) {
    throw ResourceError("module engine supports at most " + std::to_string(kMaxModuleVertices) + " variables");
  }
  dims_.assign(subset_count(n), 0);
  maps_.assign(subset_count(n) * n, Matrix<K>());
}

template <class K>
void SquarefreeModule<K>::set_dim(Subset f, std::size_t d) {
  dims_[f] = d;
  for (int j = 0; j < n_; ++j) {
    const Subset bit = Subset{1} << j;
    if (f & bit) {
      maps_[index(f & ~bit, j)] = Matrix<K>(d, dims_[f & ~bit]);
    } else {
      maps_[index(f, j)] = Matrix<K>(dims_[f | bit], d);
    }
  }
}

template <class K>
void SquarefreeModule<K>::set_mult(Subset f, int j, Matrix<K> m) {
  const Subset bit = Subset{1} << j;
  if (f & bit) throw InvariantError("set_mult: variable already in the degree");
  if (m.rows() != dims_[f | bit] || m.cols() != dims_[f]) throw InvariantError("set_mult: shape mismatch");
  maps_[index(f, j)] = std::move(m);
}

template <class K>
bool SquarefreeModule<K>::is_zero() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
}

template <class K>
std::size_t SquarefreeModule<K>::total_dim() const {
  std::size_t total = 0;
  for (auto d : dims_) total += d;
  return total;
}

template <class K>
void SquarefreeModule<K>::check_invariants(const K& field) const {
  for (Subset f = 0; f < dims_.size(); ++f) {
    for (int j = 0; j < n_; ++j) {
      const Subset bj = Subset{1} << j;
      if (f & bj) continue;
      const auto& mj = mult(f, j);
      if (mj.rows() != dims_[f | bj] || mj.cols() != dims_[f]) {
        throw InvariantError("squarefree module: map shape mismatch at " + format_subset(f));
      }
      if (dims_[f] == 0) continue;
      for (int l = j + 1; l < n_; ++l) {
        const Subset bl = Subset{1} << l;
        if ((f & bl) || dims_[f | bj | bl] == 0) continue;
        const auto lhs = multiply(field, mult(f | bj, l), mj);
        const auto rhs = multiply(field, mult(f | bl, j), mult(f, l));
        if (lhs != rhs) {
          throw InvariantError("squarefree module: multiplication maps do not commute at degree " +
                               format_subset(f) + " for variables " + std::to_string(j + 1) + "," +
                               std::to_string(l + 1));
        }
      }
    }
  }
}

template <class K>
std::size_t FreeResolution<K>::betti(int step, Subset degree) const {
  if (step < 0 || step > length()) return 0;
  const auto& ds = degrees[step];
  return static_cast<std::size_t>(std::count(ds.begin(), ds.end(), degree));
}

template <class K>
std::vector<std::size_t> FreeResolution<K>::total_betti() const {
  std::vector<std::size_t> out;
  for (const auto& ds : degrees) out.push_back(ds.size());
  return out;
}

template <class K>
void FreeResolution<K>::check_invariants(const K& field) const {
  if (length() > n) throw InvariantError("resolution longer than the number of variables");
  if (differentials.size() != degrees.size()) throw InvariantError("resolution: one differential per step");
  for (int t = 1; t <= length(); ++t) {
    const auto& d = differentials[t];
    if (d.rows() != degrees[t - 1].size() || d.cols() != degrees[t].size()) {
      throw InvariantError("resolution: differential shape mismatch at step " + std::to_string(t));
    }
    for (std::size_t a = 0; a < d.rows(); ++a) {
      for (std::size_t b = 0; b < d.cols(); ++b) {
        if (K::is_zero(d(a, b))) continue;
        if (!is_subset(degrees[t - 1][a], degrees[t][b]) || degrees[t - 1][a] == degrees[t][b]) {
          throw InvariantError("resolution: entry violates degree support or minimality at step " +
                               std::to_string(t));
        }
      }
    }
    // x^(deg c - deg b) x^(deg b - deg a) = x^(deg c - deg a) for every b, so d^2 is a
    // scalar product.
    if (t + 1 <= length() && !is_zero(multiply(field, d, differentials[t + 1]))) {
      throw InvariantError("resolution: d^2 != 0 at step " + std::to_string(t));
    }
  }
}

template <class K>
SquarefreeModule<K> quotient_module(const SquarefreeIdeal& ideal) {
  if (ideal.vertex_count() > kMaxModuleVertices) {
    throw ResourceError("module engine supports at most " + std::to_string(kMaxModuleVertices) + " variables");
  }
  const int n = ideal.vertex_count();
  SquarefreeModule<K> m(n);
  for (Subset f = 0; f < subset_count(n); ++f) {
    if (!ideal.contains_monomial(f)) m.set_dim(f, 1);
  }
  for (Subset f = 0; f < subset_count(n); ++f) {
    if (m.dim(f) == 0) continue;
    for (int j = 0; j < n; ++j) {
      const Subset bit = Subset{1} << j;
      if (!(f & bit) && m.dim(f | bit) == 1) m.set_mult(f, j, Matrix<K>::identity(1));
    }
  }
  return m;
}

template <class K>
FreeResolution<K> minimal_free_resolution(const K& field, const SquarefreeModule<K>& module) {
  const int n = module.vertex_count();
  const std::size_t size = subset_count(n);
  FreeResolution<K> res;
  res.n = n;

  SquarefreeModule<K> current = module;
  FreeEmbedding<K> embedding;  // unused at step 0
  for (int t = 0;; ++t) {
    const auto gens = minimal_generators(field, current);
    if (gens.empty()) break;
    if (t > n) throw InvariantError("resolution did not terminate within n steps");

    std::vector<Subset> degrees;
    for (const auto& g : gens) degrees.push_back(g.degree);

    Matrix<K> differential;
    if (t > 0) {
      differential = Matrix<K>(res.degrees[t - 1].size(), gens.size());
      for (std::size_t b = 0; b < gens.size(); ++b) {
        const Subset d = gens[b].degree;
        const auto local_vec = apply(field, embedding.basis[d], gens[b].element);
        for (std::size_t a = 0; a < local_vec.size(); ++a) differential(embedding.local[d][a], b) = local_vec[a];
      }
    }
    res.degrees.push_back(degrees);
    res.differentials.push_back(std::move(differential));

    // The cover F_t -> current, fiber by fiber; composite multiplications add the highest
    // missing variable last.
    std::vector<std::vector<std::size_t>> local(size);
    std::vector<Matrix<K>> cover(size);
    for (Subset g = 0; g < size; ++g) {
      local[g] = select_generators(degrees, [g](Subset d) { return is_subset(d, g); });
      Matrix<K> phi(current.dim(g), local[g].size());
      for (std::size_t c = 0; c < local[g].size(); ++c) {
        const auto& gen = gens[local[g][c]];
        Vector<K> value;
        if (gen.degree == g) {
          value = gen.element;
        } else {
          const int j = highest_vertex(g & ~gen.degree) - 1;
          const Subset below = g & ~(Subset{1} << j);
          const auto& prev = cover[below];
          const std::size_t pos = position_of(local[below], local[g][c]);
          Vector<K> col(prev.rows());
          for (std::size_t r = 0; r < prev.rows(); ++r) col[r] = prev(r, pos);
          value = apply(field, current.mult(below, j), col);
        }
        for (std::size_t r = 0; r < value.size(); ++r) phi(r, c) = value[r];
      }
      cover[g] = std::move(phi);
    }

    // Its kernel, as the next module to cover.
    std::vector<RankKernel<K>> kernels(size);
    SquarefreeModule<K> next(n);
    for (Subset g = 0; g < size; ++g) {
      kernels[g] = rank_kernel(field, cover[g]);
      next.set_dim(g, kernels[g].free_columns.size());
    }
    for (Subset g = 0; g < size; ++g) {
      if (next.dim(g) == 0) continue;
      for (int j = 0; j < n; ++j) {
        const Subset bit = Subset{1} << j;
        if (g & bit) continue;
        const Subset up = g | bit;
        if (next.dim(up) == 0) continue;
        Matrix<K> m(next.dim(up), next.dim(g));
        for (std::size_t r = 0; r < kernels[up].free_columns.size(); ++r) {
          const std::size_t global = local[up][kernels[up].free_columns[r]];
          if (!is_subset(degrees[global], g)) continue;
          const std::size_t pos = position_of(local[g], global);
          for (std::size_t c = 0; c < next.dim(g); ++c) m(r, c) = kernels[g].kernel(pos, c);
        }
        next.set_mult(g, j, std::move(m));
      }
    }
    embedding.local = std::move(local);
    embedding.basis.assign(size, Matrix<K>());
    for (Subset g = 0; g < size; ++g) embedding.basis[g] = std::move(kernels[g].kernel);
    current = std::move(next);
  }
  return res;
}

template <class K>
ChainComplexVS<K> resolution_strand(const FreeResolution<K>& res, Subset g) {
  ChainComplexVS<K> out;
  std::vector<std::vector<std::size_t>> bases;
  for (const auto& ds : res.degrees) {
    bases.push_back(select_generators(ds, [g](Subset d) { return is_subset(d, g); }));
    out.dims.push_back(bases.back().size());
  }
  for (int t = 0; t <= res.length(); ++t) {
    if (t == 0) {
      out.differentials.emplace_back(0, out.dims[0]);
      continue;
    }
    Matrix<K> d(bases[t - 1].size(), bases[t].size());
    for (std::size_t r = 0; r < bases[t - 1].size(); ++r) {
      for (std::size_t c = 0; c < bases[t].size(); ++c) d(r, c) = res.differentials[t](bases[t - 1][r], bases[t][c]);
    }
    out.differentials.push_back(std::move(d));
  }
  return out;
}

template <class K>
std::vector<SquarefreeModule<K>> ext_with_structure(const K& field, const FreeResolution<K>& res) {
  const int n = res.n;
  const std::size_t size = subset_count(n);
  std::vector<DualFiber<K>> fibers(size);
  // terms[g][t]
  std::vector<std::vector<HomologyTerm<K>>> terms(size);
  for (Subset g = 0; g < size; ++g) {
    fibers[g] = dual_fiber(res, g);
    for (int t = 0; t <= n; ++t) {
      const auto& basis = fibers[g].bases[t];
      const Matrix<K> incoming = t > 0 ? fibers[g].coboundaries[t - 1] : Matrix<K>(basis.size(), 0);
      terms[g].push_back(homology_at(field, incoming, fibers[g].coboundaries[t], basis.size()));
    }
  }

  std::vector<SquarefreeModule<K>> out;
  for (int t = 0; t <= n; ++t) {
    SquarefreeModule<K> e(n);
    for (Subset g = 0; g < size; ++g) e.set_dim(g, terms[g][t].dim);
    for (Subset g = 0; g < size; ++g) {
      if (e.dim(g) == 0) continue;
      const auto& src_basis = fibers[g].bases[t];
      const auto& reps = terms[g][t].representatives;
      for (int j = 0; j < n; ++j) {
        const Subset bit = Subset{1} << j;
        if (g & bit) continue;
        const Subset up = g | bit;
        if (e.dim(up) == 0) continue;
        const auto& dst_basis = fibers[up].bases[t];
        const auto& proj = terms[up][t].projection;
        // Lift through the basis inclusion, then project onto the classes at G+j.
        Matrix<K> embedded(dst_basis.size(), reps.cols());
        for (std::size_t a = 0; a < src_basis.size(); ++a) {
          const std::size_t pos = position_of(dst_basis, src_basis[a]);
          for (std::size_t c = 0; c < reps.cols(); ++c) embedded(pos, c) = reps(a, c);
        }
        e.set_mult(g, j, multiply(field, proj, embedded));
      }
    }
    e.check_invariants(field);
    out.push_back(std::move(e));
  }
  return out;
}

template <class K>
std::vector<SquarefreeModule<K>> ext_with_structure(const K& field, const SquarefreeModule<K>& module) {
  return ext_with_structure(field, minimal_free_resolution(field, module));
}

template <class K>
std::vector<std::vector<std::size_t>> ext_dimensions(const K& field, const FreeResolution<K>& res) {
  const int n = res.n;
  const std::size_t size = subset_count(n);
  std::vector<std::vector<std::size_t>> out(n + 1, std::vector<std::size_t>(size, 0));
  for (Subset g = 0; g < size; ++g) {
    const auto dims = fiber_dims(field, dual_fiber(res, g), n);
    for (int t = 0; t <= n; ++t) out[t][g] = dims[t];
  }
  return out;
}

template <class K>
std::vector<std::size_t> ext_fiber_dims(const K& field, const FreeResolution<K>& res, Subset g) {
  return fiber_dims(field, dual_fiber(res, g), res.n);
}

template <class K>
ModuleProfile module_profile(const K& field, const SquarefreeModule<K>& module, const FreeResolution<K>& res) {
  const int n = module.vertex_count();
  const auto dims = ext_dimensions(field, res);
  ModuleProfile p;
  for (int t = 0; t <= n; ++t) {
    if (std::any_of(dims[t].begin(), dims[t].end(), [](std::size_t d) { return d > 0; })) {
      p.nonvanishing_ext.insert(t);
    }
  }
  p.is_zero = module.is_zero();
  if (p.is_zero) {
    if (!p.nonvanishing_ext.empty()) throw InvariantError("zero module with nonzero Ext");
    p.is_cm = true;
    return p;
  }
  if (p.nonvanishing_ext.empty()) throw InvariantError("nonzero module with vanishing Ext");
  int dim = -1;
  for (Subset f = 0; f < subset_count(n); ++f) {
    if (module.dim(f) > 0) dim = std::max(dim, cardinality(f));
  }
  p.dim = dim;
  p.depth = n - *p.nonvanishing_ext.rbegin();
  if (n - *p.nonvanishing_ext.begin() != dim) {
    throw InvariantError("Ext vanishing disagrees with the fiber support: dim " + std::to_string(dim) +
                         " vs lowest nonvanishing Ext index " + std::to_string(*p.nonvanishing_ext.begin()));
  }
  if (*p.depth > dim) throw InvariantError("depth exceeds dimension");
  p.is_cm = p.nonvanishing_ext.size() == 1;
  return p;
}

template <class K>
ModuleProfile module_profile(const K& field, const SquarefreeModule<K>& module) {
  return module_profile(field, module, minimal_free_resolution(field, module));
}

#define LYUTAB_SQMOD_INSTANTIATE(K)                                                                   \
  template class SquarefreeModule<K>;                                                                 \
  template struct FreeResolution<K>;                                                                  \
  template SquarefreeModule<K> quotient_module<K>(const SquarefreeIdeal&);                            \
  template FreeResolution<K> minimal_free_resolution<K>(const K&, const SquarefreeModule<K>&);        \
  template ChainComplexVS<K> resolution_strand<K>(const FreeResolution<K>&, Subset);                  \
  template std::vector<SquarefreeModule<K>> ext_with_structure<K>(const K&, const FreeResolution<K>&); \
  template std::vector<SquarefreeModule<K>> ext_with_structure<K>(const K&, const SquarefreeModule<K>&); \
  template std::vector<std::vector<std::size_t>> ext_dimensions<K>(const K&, const FreeResolution<K>&); \
  template std::vector<std::size_t> ext_fiber_dims<K>(const K&, const FreeResolution<K>&, Subset);    \
  template ModuleProfile module_profile<K>(const K&, const SquarefreeModule<K>&);                     \
  template ModuleProfile module_profile<K>(const K&, const SquarefreeModule<K>&, const FreeResolution<K>&);

LYUTAB_SQMOD_INSTANTIATE(RationalField)
LYUTAB_SQMOD_INSTANTIATE(PrimeField)

}  // namespace lyutab
