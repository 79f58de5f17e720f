#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "lyutab/complex.hpp"
#include "lyutab/homology.hpp"
#include "lyutab/matrix.hpp"

namespace lyutab {

/// Largest vertex count the module engine accepts; every module stores 2^n fibers.
inline constexpr int kMaxModuleVertices = 16;

/// A squarefree module: one vector space per subset F of {1..n} and, for each variable j
/// outside F, the multiplication map x_j : M_F -> M_{F+j}.
///
/// Variables are 0-based bit positions here.
template <class K>
class SquarefreeModule {
 public:
  SquarefreeModule() = default;
  /// The zero module on n variables.
  explicit SquarefreeModule(int n);

  int vertex_count() const { return n_; }
  std::size_t dim(Subset f) const { return dims_[f]; }
  const Matrix<K>& mult(Subset f, int j) const { return maps_[index(f, j)]; }

  /// Resets the fiber at f; the maps touching it are reset to zero maps of the right shape.
  void set_dim(Subset f, std::size_t d);
  void set_mult(Subset f, int j, Matrix<K> m);

  bool is_zero() const;
  std::size_t total_dim() const;

  /// Shapes of all maps and the commuting squares x_l x_j = x_j x_l. Throws InvariantError.
  void check_invariants(const K& field) const;

  friend bool operator==(const SquarefreeModule&, const SquarefreeModule&) = default;

 private:
  std::size_t index(Subset f, int j) const { return static_cast<std::size_t>(f) * n_ + j; }

  int n_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix<K>> maps_;
};

/// Minimal multigraded free resolution of a squarefree module.
///
/// differentials[t] (t >= 1) has one row per generator of step t-1 and one column per
/// generator of step t; entry c at (a, b) stands for c * x^(deg b - deg a) and is nonzero only
/// when deg a is a proper subset of deg b.
template <class K>
struct FreeResolution {
  int n = 0;
  std::vector<std::vector<Subset>> degrees;
  std::vector<Matrix<K>> differentials;

  int length() const { return static_cast<int>(degrees.size()) - 1; }
  std::size_t betti(int step, Subset degree) const;
  std::vector<std::size_t> total_betti() const;

  /// d^2 = 0, degree support, minimality, length <= n. Throws InvariantError.
  void check_invariants(const K& field) const;

  friend bool operator==(const FreeResolution&, const FreeResolution&) = default;
};

/// Cohomological data of a module through its Ext against the canonical module.
/// `dim` empty means -infinity and `depth` empty means +infinity (both only for the zero module).
struct ModuleProfile {
  bool is_zero = true;
  std::optional<int> dim;
  std::optional<int> depth;
  /// True for the zero module by convention; callers test "zero or CM of dimension i".
  bool is_cm = true;
  std::set<int> nonvanishing_ext;

  friend bool operator==(const ModuleProfile&, const ModuleProfile&) = default;
};

/// R/I: fiber k exactly on the faces of the Stanley-Reisner complex, identity maps.
template <class K>
SquarefreeModule<K> quotient_module(const SquarefreeIdeal& ideal);

template <class K>
FreeResolution<K> minimal_free_resolution(const K& field, const SquarefreeModule<K>& module);

/// The degree-G strand of the resolution: basis = generators of degree inside G.
/// Its homology is the fiber M_G in degree 0 and zero elsewhere.
template <class K>
ChainComplexVS<K> resolution_strand(const FreeResolution<K>& res, Subset g);

/// E^j = Ext^j(M, ω_R) with ω_R = R(-1,..,-1), for j = 0..n, with induced multiplication maps.
template <class K>
std::vector<SquarefreeModule<K>> ext_with_structure(const K& field, const FreeResolution<K>& res);
template <class K>
std::vector<SquarefreeModule<K>> ext_with_structure(const K& field, const SquarefreeModule<K>& module);

/// dims[j][G] = dim E^j_G, from ranks only.
template <class K>
std::vector<std::vector<std::size_t>> ext_dimensions(const K& field, const FreeResolution<K>& res);

/// dim E^j_G for j = 0..n at a single degree G.
template <class K>
std::vector<std::size_t> ext_fiber_dims(const K& field, const FreeResolution<K>& res, Subset g);

template <class K>
ModuleProfile module_profile(const K& field, const SquarefreeModule<K>& module);
/// Same, reusing an already computed resolution of `module`.
template <class K>
ModuleProfile module_profile(const K& field, const SquarefreeModule<K>& module, const FreeResolution<K>& res);

#define LYUTAB_SQMOD_EXTERN(K)                                                                              \
  extern template class SquarefreeModule<K>;                                                                \
  extern template struct FreeResolution<K>;                                                                 \
  extern template SquarefreeModule<K> quotient_module<K>(const SquarefreeIdeal&);                           \
  extern template FreeResolution<K> minimal_free_resolution<K>(const K&, const SquarefreeModule<K>&);       \
  extern template ChainComplexVS<K> resolution_strand<K>(const FreeResolution<K>&, Subset);                 \
  extern template std::vector<SquarefreeModule<K>> ext_with_structure<K>(const K&, const FreeResolution<K>&); \
  extern template std::vector<SquarefreeModule<K>> ext_with_structure<K>(const K&, const SquarefreeModule<K>&); \
  extern template std::vector<std::vector<std::size_t>> ext_dimensions<K>(const K&, const FreeResolution<K>&); \
  extern template std::vector<std::size_t> ext_fiber_dims<K>(const K&, const FreeResolution<K>&, Subset);    \
  extern template ModuleProfile module_profile<K>(const K&, const SquarefreeModule<K>&);                    \
  extern template ModuleProfile module_profile<K>(const K&, const SquarefreeModule<K>&, const FreeResolution<K>&);

LYUTAB_SQMOD_EXTERN(RationalField)
LYUTAB_SQMOD_EXTERN(PrimeField)
#undef LYUTAB_SQMOD_EXTERN

}  // namespace lyutab
