#pragma once

// Alternating k-vectors and k-covectors on R^n stored sparsely over the
// lexicographic basis e_I = e_{i1} ^ ... ^ e_{ik}, i1 < ... < ik.
//
// The scalar type is a template parameter: `double` for numerics and
// `Rational` for exact algebraic identities.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "calibra/error.hpp"

namespace calibra {

using Rational = boost::rational<long long>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

inline constexpr int kMaxDim = 32;

// Strictly increasing set of axes, stored as a bit mask (bit a <=> axis a+1).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit constexpr MultiIndex(std::uint32_t mask) : mask_(mask) {}

  // `axes` are 1-based and must be strictly increasing and <= dim.
  static MultiIndex from_axes(std::span<const int> axes, int dim) {
    std::uint32_t mask = 0;
    int prev = 0;
    for (int a : axes) {
      require(a > prev, ErrorCode::invalid_argument, "multi-index axes must be strictly increasing and >= 1");
      require(a <= dim, ErrorCode::dimension_mismatch,
              "axis " + std::to_string(a) + " exceeds dimension " + std::to_string(dim));
      mask |= std::uint32_t{1} << (a - 1);
      prev = a;
    }
    return MultiIndex(mask);
  }
  static MultiIndex from_axes(std::initializer_list<int> axes, int dim) {
    std::vector<int> v(axes);
    return from_axes(std::span<const int>(v), dim);
  }
  static MultiIndex single(int axis0) { return MultiIndex(std::uint32_t{1} << axis0); }
  // First `k` axes {1, ..., k}.
  static MultiIndex leading(int k) { return MultiIndex(k >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1); }

  std::uint32_t mask() const { return mask_; }
  int degree() const { return std::popcount(mask_); }
  bool contains(int axis0) const { return (mask_ >> axis0) & 1u; }
  bool empty() const { return mask_ == 0; }

  // 1-based axes in increasing order.
  std::vector<int> axes() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }
  // 0-based axes in increasing order.
  std::vector<int> axes0() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  // Number of elements of this index strictly greater than axis0.
  int count_above(int axis0) const {
    if (axis0 >= 31) return 0;
    return std::popcount(mask_ & ~((std::uint32_t{2} << axis0) - 1));
  }

  friend bool operator==(MultiIndex a, MultiIndex b) { return a.mask_ == b.mask_; }
  // Degree first, then lexicographic order of the sorted axis lists. For equal
  // degree the smallest element of the symmetric difference decides.
  friend bool operator<(MultiIndex a, MultiIndex b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    std::uint32_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return false;
    return (a.mask_ & (diff & (~diff + 1))) != 0;
  }

 private:
  std::uint32_t mask_ = 0;
};

// Sign of the permutation sorting the concatenation (I, J) of disjoint indices.
inline int merge_sign(MultiIndex i, MultiIndex j) {
  int inversions = 0;
  for (std::uint32_t m = j.mask(); m != 0; m &= m - 1) inversions += i.count_above(std::countr_zero(m));
  return (inversions & 1) ? -1 : 1;
}

enum class Variance { vector, covector };

template <Variance V, class S>
class AlternatingTensor {
 public:
  using Scalar = S;
  using Terms = std::map<MultiIndex, S>;

  AlternatingTensor() = default;
  AlternatingTensor(int degree, int dim) : degree_(degree), dim_(dim) {
    require(dim >= 0 && dim <= kMaxDim, ErrorCode::invalid_argument, "dimension must be in [0, 32]");
    require(degree >= 0 && degree <= dim, ErrorCode::degree_overflow, "degree must be in [0, dim]");
  }

  static AlternatingTensor basis(int dim, MultiIndex index, S coeff = S(1)) {
    AlternatingTensor t(index.degree(), dim);
    t.add_term(index, coeff);
    return t;
  }
  static AlternatingTensor basis(int dim, std::initializer_list<int> axes, S coeff = S(1)) {
    return basis(dim, MultiIndex::from_axes(axes, dim), coeff);
  }
  // Degree-1 element with the given coordinates.
  static AlternatingTensor from_coordinates(std::span<const S> coords) {
    AlternatingTensor t(1, static_cast<int>(coords.size()));
    for (std::size_t a = 0; a < coords.size(); ++a) t.add_term(MultiIndex::single(static_cast<int>(a)), coords[a]);
    return t;
  }
  static AlternatingTensor scalar(int dim, S value) {
    AlternatingTensor t(0, dim);
    t.add_term(MultiIndex(), value);
    return t;
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(MultiIndex index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(MultiIndex index, S value) {
    require(index.degree() == degree_, ErrorCode::invalid_argument, "term degree does not match tensor degree");
    require(dim_ >= 32 || (index.mask() >> dim_) == 0, ErrorCode::dimension_mismatch, "term axis exceeds dimension");
    if (value == S(0)) return;
    auto [it, inserted] = terms_.try_emplace(index, value);
    if (!inserted) {
      it->second += value;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  S norm_squared() const {
    S acc(0);
    for (const auto& [_, c] : terms_) acc += c * c;
    return acc;
  }
  double norm() const { return std::sqrt(to_double(norm_squared())); }

  AlternatingTensor& operator+=(const AlternatingTensor& o) {
    check_same_shape(o);
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    return *this;
  }
  AlternatingTensor& operator-=(const AlternatingTensor& o) {
    check_same_shape(o);
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    return *this;
  }
  AlternatingTensor& operator*=(S s) {
    if (s == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [_, c] : terms_) c *= s;
    return *this;
  }
  friend AlternatingTensor operator+(AlternatingTensor a, const AlternatingTensor& b) { return a += b; }
  friend AlternatingTensor operator-(AlternatingTensor a, const AlternatingTensor& b) { return a -= b; }
  friend AlternatingTensor operator*(S s, AlternatingTensor a) { return a *= s; }
  friend AlternatingTensor operator*(AlternatingTensor a, S s) { return a *= s; }
  friend AlternatingTensor operator-(AlternatingTensor a) { return a *= S(-1); }
  friend bool operator==(const AlternatingTensor& a, const AlternatingTensor& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  template <class T>
  AlternatingTensor<V, T> cast() const {
    AlternatingTensor<V, T> out(degree_, dim_);
    for (const auto& [i, c] : terms_) out.add_term(i, static_cast<T>(to_double(c)));
    return out;
  }

 private:
  void check_same_shape(const AlternatingTensor& o) const {
    require(dim_ == o.dim_, ErrorCode::dimension_mismatch, "dimension mismatch");
    require(degree_ == o.degree_, ErrorCode::invalid_argument, "degree mismatch in sum");
  }

  int degree_ = 0;
  int dim_ = 0;
  Terms terms_;
};

template <class S = double>
using KVectorT = AlternatingTensor<Variance::vector, S>;
template <class S = double>
using KCovectorT = AlternatingTensor<Variance::covector, S>;
using KVector = KVectorT<double>;
using KCovector = KCovectorT<double>;

template <Variance V, class S>
AlternatingTensor<V, S> wedge(const AlternatingTensor<V, S>& a, const AlternatingTensor<V, S>& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch, "wedge: dimension mismatch");
  require(a.degree() + b.degree() <= a.dim(), ErrorCode::degree_overflow, "wedge: degree exceeds dimension");
  AlternatingTensor<V, S> out(a.degree() + b.degree(), a.dim());
  for (const auto& [i, ca] : a.terms()) {
    for (const auto& [j, cb] : b.terms()) {
      if ((i.mask() & j.mask()) != 0) continue;
      out.add_term(MultiIndex(i.mask() | j.mask()), S(merge_sign(i, j)) * ca * cb);
    }
  }
  return out;
}

// v _| xi under the Euclidean identification of vectors and covectors:
// e_i _| (e_{a1} ^ ... ^ e_{ak}) = (-1)^{p-1} e_{a1} ^ ..^(omit a_p)^ .. ^ e_{ak} when i = a_p.
template <Variance V, class S>
AlternatingTensor<V, S> interior(std::span<const S> v, const AlternatingTensor<V, S>& xi) {
  require(static_cast<int>(v.size()) == xi.dim(), ErrorCode::dimension_mismatch, "interior: dimension mismatch");
  require(xi.degree() >= 1, ErrorCode::invalid_argument, "interior: degree 0 input");
  AlternatingTensor<V, S> out(xi.degree() - 1, xi.dim());
  for (const auto& [idx, c] : xi.terms()) {
    for (std::uint32_t m = idx.mask(); m != 0; m &= m - 1) {
      const int axis = std::countr_zero(m);
      if (v[axis] == S(0)) continue;
      const MultiIndex rest(idx.mask() & ~(std::uint32_t{1} << axis));
      const int position = idx.degree() - 1 - idx.count_above(axis);  // 0-based slot
      const S sign = (position & 1) ? S(-1) : S(1);
      out.add_term(rest, sign * v[axis] * c);
    }
  }
  return out;
}

template <class S>
S pair(const KCovectorT<S>& phi, const KVectorT<S>& xi) {
  require(phi.dim() == xi.dim(), ErrorCode::dimension_mismatch, "pair: dimension mismatch");
  require(phi.degree() == xi.degree(), ErrorCode::invalid_argument, "pair: degree mismatch");
  S acc(0);
  const auto& small = phi.terms().size() <= xi.terms().size() ? phi.terms() : xi.terms();
  for (const auto& [i, _] : small) acc += phi.coeff(i) * xi.coeff(i);
  return acc;
}

// Euclidean inner product of two tensors of the same kind.
template <Variance V, class S>
S inner(const AlternatingTensor<V, S>& a, const AlternatingTensor<V, S>& b) {
  require(a.dim() == b.dim() && a.degree() == b.degree(), ErrorCode::dimension_mismatch, "inner: shape mismatch");
  S acc(0);
  for (const auto& [i, c] : a.terms()) acc += c * b.coeff(i);
  return acc;
}

// Norm of the quadratic Pluecker relations divided by |xi|^2.
//
// For every (k-1)-index I and (k+1)-index J the relation is
//   R_{I,J} = sum_{l} (-1)^l xi_{I+j_l} xi_{J-j_l},
// with xi extended antisymmetrically. The defect is sqrt(sum R_{I,J}^2) / |xi|^2,
// which is 0 exactly on simple k-vectors and equals 1 on e12 + e34.
template <class S>
double simplicity_defect(const KVectorT<S>& xi) {
  require(!xi.is_zero(), ErrorCode::invalid_argument, "simplicity_defect: zero k-vector");
  const int k = xi.degree();
  if (k <= 1 || k >= xi.dim() - 1) return 0.0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> relations;
  for (const auto& [a, ca] : xi.terms()) {
    for (const auto& [b, cb] : xi.terms()) {
      // Contribution of the pair (I + j, J - j) with j in a, j not in b.
      for (std::uint32_t m = a.mask() & ~b.mask(); m != 0; m &= m - 1) {
        const int j = std::countr_zero(m);
        const std::uint32_t bit = std::uint32_t{1} << j;
        const MultiIndex i_idx(a.mask() & ~bit);
        const MultiIndex j_idx(b.mask() | bit);
        // xi_{(I, j)} with j appended last, relative to sorted order.
        const int sort_sign = (i_idx.count_above(j) & 1) ? -1 : 1;
        // (-1)^l with l the 1-based slot of j inside J.
        const int slot = j_idx.degree() - j_idx.count_above(j);
        const int slot_sign = (slot & 1) ? -1 : 1;
        relations[{i_idx.mask(), j_idx.mask()}] += slot_sign * sort_sign * to_double(ca) * to_double(cb);
      }
    }
  }
  double sum = 0.0;
  for (const auto& [_, r] : relations) sum += r * r;
  return std::sqrt(sum) / to_double(xi.norm_squared());
}

inline constexpr double kSimplicityTolerance = 1e-9;

template <class S>
bool is_simple(const KVectorT<S>& xi) {
  return simplicity_defect(xi) < kSimplicityTolerance;
}

}  // namespace calibra
