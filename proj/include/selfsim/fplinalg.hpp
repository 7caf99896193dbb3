#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

using Residue = std::int64_t;
using Vector = std::vector<Residue>;

/// Least nonnegative residue of `v` modulo `m`.
inline Residue reduce(Residue v, Residue m) {
  Residue r = v % m;
  return r < 0 ? r + m : r;
}

/// An integer residue modulo m = p^e.
class FpScalar {
 public:
  FpScalar(Residue value, Residue modulus) : modulus_(modulus), value_(reduce(value, modulus)) {}

  Residue value() const { return value_; }
  Residue modulus() const { return modulus_; }

  FpScalar operator+(FpScalar o) const { return {value_ + o.value_, modulus_}; }
  FpScalar operator-(FpScalar o) const { return {value_ - o.value_, modulus_}; }
  FpScalar operator*(FpScalar o) const { return {value_ * o.value_, modulus_}; }
  bool operator==(const FpScalar&) const = default;

 private:
  Residue modulus_;
  Residue value_;
};

/// Square matrix whose row i is reduced modulo p^{e_i}.
///
/// With every row modulus equal to p this is an element of M_n(GF(p)). With
/// mixed moduli it describes an endomorphism of C_{p^{e_1}} x ... x C_{p^{e_n}}
/// acting on coordinate column vectors: column j is the image of generator j.
class FpMatrix {
 public:
  FpMatrix() = default;
  /// Zero matrix over GF(p).
  FpMatrix(int p, std::size_t n);
  /// Zero matrix with the given per-row moduli (each a power of p).
  FpMatrix(int p, std::vector<Residue> row_moduli);

  static FpMatrix identity(int p, std::size_t n);
  static FpMatrix identity(int p, std::vector<Residue> row_moduli);
  static FpMatrix from_rows(int p, const std::vector<Vector>& rows);
  static FpMatrix from_rows(int p, const std::vector<Vector>& rows, std::vector<Residue> row_moduli);

  int p() const { return p_; }
  std::size_t size() const { return n_; }
  Residue modulus(std::size_t row) const { return moduli_[row]; }
  const std::vector<Residue>& moduli() const { return moduli_; }
  bool is_prime_field() const;

  Residue at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { entries_[r * n_ + c] = reduce(v, moduli_[r]); }
  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  Vector apply(std::span<const Residue> v) const;
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix pow(std::uint64_t k) const;
  bool is_identity() const;
  bool is_zero() const;

  bool operator==(const FpMatrix&) const = default;

  /// Matrix literal: rows separated by ';', entries by ','.
  std::string to_literal() const;

 private:
  void check_compatible(const FpMatrix& o) const;

  int p_ = 0;
  std::size_t n_ = 0;
  std::vector<Residue> moduli_;
  std::vector<Residue> entries_;
};

/// Parses `1,1,0; 0,1,0; 0,0,1` into rows of integers (unreduced).
std::vector<Vector> parse_matrix_literal(std::string_view text);

// ---------------------------------------------------------------------------
// Operations

/// Exact product M*v, coordinate i reduced modulo the row modulus.
Vector mat_apply(const FpMatrix& m, std::span<const Residue> v);

/// Least k >= 1 with M^k = I. Throws std::invalid_argument if M is singular.
std::uint64_t mat_order(const FpMatrix& m);

/// Rank over GF(p) of M reduced modulo p.
std::size_t rank_mod_p(const FpMatrix& m);

/// Inverse over GF(p). Throws std::invalid_argument if singular.
FpMatrix inverse(const FpMatrix& m);

/// Basis of ker(A) over GF(p) in reduced row echelon form, lowest pivot first.
std::vector<Vector> null_space(const FpMatrix& a);

/// Basis of ker(M - I), same normal form as null_space.
std::vector<Vector> fixed_space(const FpMatrix& m);

/// Incrementally maintained echelon basis of a subspace of GF(p)^n.
class EchelonBasis {
 public:
  EchelonBasis(int p, std::size_t n) : p_(p), n_(n) {}

  /// Inserts v; returns false if v was already in the span.
  bool insert(std::span<const Residue> v);
  bool contains(std::span<const Residue> v) const;
  std::size_t dimension() const { return rows_.size(); }

 private:
  Vector reduce_vector(std::span<const Residue> v) const;

  int p_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

struct JordanData {
  /// s_1 >= ... >= s_m.
  std::vector<std::size_t> block_sizes;
  /// b_{1,1}, ..., b_{1,s_1}, b_{2,1}, ...; the first vector of each block is fixed.
  std::vector<Vector> basis;
  /// P with P * M * P^{-1} equal to the unipotent Jordan matrix.
  FpMatrix change_of_basis;

  std::size_t block_count() const { return block_sizes.size(); }
  /// Offset of b_{block,1} in `basis` (block is 0-based).
  std::size_t block_offset(std::size_t block) const;
  /// b_{block+1, position+1}.
  const Vector& vector_at(std::size_t block, std::size_t position) const {
    return basis[block_offset(block) + position];
  }
};

/// Block-diagonal matrix of unipotent Jordan blocks (1 on the diagonal and
/// superdiagonal) with the given sizes.
FpMatrix unipotent_jordan_matrix(int p, std::span<const std::size_t> block_sizes);

/// Jordan decomposition of M over GF(p) with M^p = I.
///
/// Chains are built from the top level down. At level k the candidates are
/// the echelon basis vectors of ker (M - I)^k, taken lowest pivot first; a
/// candidate starts a new block when it is independent of ker (M - I)^{k-1}
/// together with the level-k vectors of the blocks already chosen.
JordanData unipotent_jordan(const FpMatrix& m);

}  // namespace selfsim
