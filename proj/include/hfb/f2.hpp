#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hfb {

/// Bit-packed vector over the two-element field.
class F2Vector {
public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  F2Vector &operator^=(const F2Vector &o) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] ^= o.words_[w];
    return *this;
  }
  friend F2Vector operator^(F2Vector a, const F2Vector &b) { return a ^= b; }
  bool operator==(const F2Vector &o) const = default;

  bool is_zero() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;
  std::size_t popcount() const;
  std::vector<std::size_t> support() const;

  const std::vector<std::uint64_t> &words() const { return words_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense matrix over F2, stored as rows.
class F2Matrix {
public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vector(cols)) {}

  static F2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const F2Vector &row(std::size_t r) const { return rows_[r]; }
  F2Vector &row(std::size_t r) { return rows_[r]; }

  F2Vector column(std::size_t c) const;
  F2Matrix transpose() const;
  F2Vector apply(const F2Vector &x) const; // this * x

  F2Matrix &operator+=(const F2Matrix &o);
  friend F2Matrix operator+(F2Matrix a, const F2Matrix &b) { return a += b; }
  friend F2Matrix operator*(const F2Matrix &a, const F2Matrix &b);
  bool operator==(const F2Matrix &o) const = default;

  bool is_zero() const;
  std::size_t rank() const;

private:
  std::size_t cols_ = 0;
  std::vector<F2Vector> rows_;
};

/// Subspace of F2^n kept as an echelon basis keyed by lowest set bit.
class F2Subspace {
public:
  explicit F2Subspace(std::size_t ambient = 0) : ambient_(ambient), pivot_of_(ambient, -1) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<F2Vector> &basis() const { return basis_; }

  /// Reduce v against the basis (result has no bits at pivot positions).
  F2Vector reduce(F2Vector v) const;
  bool contains(const F2Vector &v) const { return reduce(v).is_zero(); }
  /// Returns true when v was independent and got added.
  bool insert(const F2Vector &v);
  void insert_all(const F2Subspace &o);
  bool contains_all(const F2Subspace &o) const;

private:
  std::size_t ambient_;
  std::vector<int> pivot_of_; // bit -> basis index
  std::vector<F2Vector> basis_;
};

/// Basis of {x : a x = 0}.
std::vector<F2Vector> nullspace(const F2Matrix &a);

/// Some x with a x = b, if one exists.
std::optional<F2Vector> solve(const F2Matrix &a, const F2Vector &b);

/// Incremental linear system A x = b over F2: equations are added one at a time
/// and kept reduced; used for the homotopy and chain-map constraints.
class F2LinearSystem {
public:
  explicit F2LinearSystem(std::size_t unknowns) : unknowns_(unknowns), eqs_(unknowns + 1) {}

  std::size_t unknowns() const { return unknowns_; }
  /// Adds the equation coeffs . x = rhs. Returns false once inconsistent.
  bool add(const F2Vector &coeffs, bool rhs);
  bool consistent() const { return consistent_; }
  std::optional<F2Vector> any_solution() const;
  std::vector<F2Vector> solution_space_basis() const; // of the homogeneous system
  std::size_t rank() const { return eqs_.dim(); }

private:
  std::size_t unknowns_;
  // equations as vectors of length unknowns + 1 with the rhs in the last slot
  F2Subspace eqs_;
  bool consistent_ = true;
};

} // namespace hfb
