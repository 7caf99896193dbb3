#include "selfsim/fplinalg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

Residue inverse_mod_p(Residue a, Residue p) {
  Residue result = 1;
  Residue base = reduce(a, p);
  for (Residue e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Row-reduces `rows` in place over GF(p); returns pivot columns in row order.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t width, Residue p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Residue inv = inverse_mod_p(rows[r][c], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Residue f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = reduce(rows[i][j] - f * rows[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<Vector> rows_mod_p(const FpMatrix& m) {
  std::vector<Vector> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows[i] = m.row(i);
    for (auto& x : rows[i]) x = reduce(x, m.p());
  }
  return rows;
}

}  // namespace

FpMatrix::FpMatrix(int p, std::size_t n) : FpMatrix(p, std::vector<Residue>(n, p)) {}

FpMatrix::FpMatrix(int p, std::vector<Residue> row_moduli)
    : p_(p), n_(row_moduli.size()), moduli_(std::move(row_moduli)), entries_(n_ * n_, 0) {
  if (p < 2) throw std::invalid_argument("FpMatrix: p must be a prime >= 2");
  for (Residue m : moduli_) {
    Residue q = m;
    while (q % p == 0) q /= p;
    if (q != 1 || m < p) throw std::invalid_argument("FpMatrix: row modulus must be a positive power of p");
  }
}

FpMatrix FpMatrix::identity(int p, std::size_t n) { return identity(p, std::vector<Residue>(n, p)); }

FpMatrix FpMatrix::identity(int p, std::vector<Residue> row_moduli) {
  FpMatrix m(p, std::move(row_moduli));
  for (std::size_t i = 0; i < m.n_; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<Vector>& rows) {
  return from_rows(p, rows, std::vector<Residue>(rows.size(), p));
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<Vector>& rows, std::vector<Residue> row_moduli) {
  if (rows.size() != row_moduli.size())
    throw std::invalid_argument("FpMatrix: row count does not match moduli");
  FpMatrix m(p, std::move(row_moduli));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.n_) throw std::invalid_argument("FpMatrix: matrix must be square");
    for (std::size_t j = 0; j < m.n_; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

bool FpMatrix::is_prime_field() const {
  return std::all_of(moduli_.begin(), moduli_.end(), [&](Residue m) { return m == p_; });
}

Vector FpMatrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * n_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * n_));
}

Vector FpMatrix::column(std::size_t c) const {
  Vector v(n_);
  for (std::size_t r = 0; r < n_; ++r) v[r] = at(r, c);
  return v;
}

Vector FpMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != n_) throw std::invalid_argument("mat_apply: dimension mismatch");
  Vector out(n_, 0);
  for (std::size_t r = 0; r < n_; ++r) {
    Residue acc = 0;
    for (std::size_t c = 0; c < n_; ++c) acc = (acc + at(r, c) * reduce(v[c], moduli_[r])) % moduli_[r];
    out[r] = acc;
  }
  return out;
}

void FpMatrix::check_compatible(const FpMatrix& o) const {
  if (p_ != o.p_ || n_ != o.n_ || moduli_ != o.moduli_)
    throw std::invalid_argument("FpMatrix: incompatible operands");
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  check_compatible(o);
  FpMatrix out(p_, moduli_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) {
      Residue acc = 0;
      for (std::size_t k = 0; k < n_; ++k) acc = (acc + at(r, k) * o.at(k, c)) % moduli_[r];
      out.entries_[r * n_ + c] = acc;
    }
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  check_compatible(o);
  FpMatrix out(p_, moduli_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out.set(r, c, at(r, c) - o.at(r, c));
  return out;
}

FpMatrix FpMatrix::pow(std::uint64_t k) const {
  FpMatrix result = identity(p_, moduli_);
  FpMatrix base = *this;
  for (; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    base = base * base;
  }
  return result;
}

bool FpMatrix::is_identity() const { return *this == identity(p_, moduli_); }

bool FpMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue x) { return x == 0; });
}

std::string FpMatrix::to_literal() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < n_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < n_; ++c) {
      if (c) os << ',';
      os << at(r, c);
    }
  }
  return os.str();
}

std::vector<Vector> parse_matrix_literal(std::string_view text) {
  std::vector<Vector> rows;
  text = trim(text);
  if (text.empty()) return rows;
  while (true) {
    const auto semi = text.find(';');
    std::string_view row_text = trim(text.substr(0, semi));
    Vector row;
    while (true) {
      const auto comma = row_text.find(',');
      std::string_view cell = trim(row_text.substr(0, comma));
      Residue v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw std::invalid_argument("matrix literal: bad entry '" + std::string(cell) + "'");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      row_text.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw std::invalid_argument("matrix literal: matrix must be square");
  return rows;
}

Vector mat_apply(const FpMatrix& m, std::span<const Residue> v) { return m.apply(v); }

std::size_t rank_mod_p(const FpMatrix& m) {
  auto rows = rows_mod_p(m);
  return rref(rows, m.size(), m.p()).size();
}

std::uint64_t mat_order(const FpMatrix& m) {
  // A matrix describing an endomorphism of a finite abelian p-group is
  // bijective iff it is bijective modulo p.
  if (rank_mod_p(m) != m.size()) throw std::invalid_argument("mat_order: matrix is not invertible");
  // Number of matrices with these moduli, saturating.
  std::uint64_t cap = 1;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      const auto mod = static_cast<std::uint64_t>(m.modulus(r));
      cap = cap > std::numeric_limits<std::uint64_t>::max() / mod ? std::numeric_limits<std::uint64_t>::max()
                                                                  : cap * mod;
    }
  FpMatrix power = m;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (power.is_identity()) return k;
    power = power * m;
  }
  throw std::invalid_argument("mat_order: matrix is not invertible");
}

FpMatrix inverse(const FpMatrix& m) {
  if (!m.is_prime_field()) throw std::invalid_argument("inverse: only defined over GF(p)");
  const std::size_t n = m.size();
  std::vector<Vector> aug(n, Vector(2 * n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m.at(r, c);
    aug[r][n + r] = 1;
  }
  auto pivots = rref(aug, n, m.p());
  if (pivots.size() != n) throw std::invalid_argument("inverse: matrix is singular");
  FpMatrix out(m.p(), n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.set(r, c, aug[r][n + c]);
  return out;
}

std::vector<Vector> null_space(const FpMatrix& a) {
  if (!a.is_prime_field()) throw std::invalid_argument("null_space: only defined over GF(p)");
  const std::size_t n = a.size();
  const Residue p = a.p();
  auto rows = rows_mod_p(a);
  const auto pivots = rref(rows, n, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = reduce(-rows[r][f], p);
    basis.push_back(std::move(v));
  }
  rref(basis, n, p);
  return basis;
}

std::vector<Vector> fixed_space(const FpMatrix& m) {
  return null_space(m - FpMatrix::identity(m.p(), m.moduli()));
}

Vector EchelonBasis::reduce_vector(std::span<const Residue> v) const {
  if (v.size() != n_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
  Vector w(v.begin(), v.end());
  for (auto& x : w) x = reduce(x, p_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue f = w[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) w[j] = reduce(w[j] - f * rows_[i][j], p_);
  }
  return w;
}

bool EchelonBasis::contains(std::span<const Residue> v) const {
  const Vector w = reduce_vector(v);
  return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

bool EchelonBasis::insert(std::span<const Residue> v) {
  Vector w = reduce_vector(v);
  const auto it = std::find_if(w.begin(), w.end(), [](Residue x) { return x != 0; });
  if (it == w.end()) return false;
  const auto pivot = static_cast<std::size_t>(it - w.begin());
  const Residue inv = inverse_mod_p(w[pivot], p_);
  for (auto& x : w) x = x * inv % p_;
  // Keep existing rows reduced against the new pivot.
  for (auto& row : rows_) {
    const Residue f = row[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) row[j] = reduce(row[j] - f * w[j], p_);
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

std::size_t JordanData::block_offset(std::size_t block) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < block; ++i) off += block_sizes[i];
  return off;
}

FpMatrix unipotent_jordan_matrix(int p, std::span<const std::size_t> block_sizes) {
  std::size_t n = 0;
  for (auto s : block_sizes) n += s;
  FpMatrix j = FpMatrix::identity(p, n);
  std::size_t off = 0;
  for (auto s : block_sizes) {
    for (std::size_t k = 1; k < s; ++k) j.set(off + k - 1, off + k, 1);
    off += s;
  }
  return j;
}

JordanData unipotent_jordan(const FpMatrix& m) {
  if (!m.is_prime_field()) throw std::invalid_argument("unipotent_jordan: matrix must be over GF(p)");
  if (!m.pow(static_cast<std::uint64_t>(m.p())).is_identity())
    throw std::invalid_argument("unipotent_jordan: M^p != I");
  const std::size_t n = m.size();
  const int p = m.p();
  const FpMatrix nil = m - FpMatrix::identity(p, n);

  // kernels[k] = ker N^k, k = 0..depth with N^depth = 0.
  std::vector<std::vector<Vector>> kernels{{}};
  FpMatrix power = FpMatrix::identity(p, n);
  while (kernels.back().size() < n) {
    power = power * nil;
    kernels.push_back(null_space(power));
  }
  const std::size_t depth = kernels.size() - 1;

  // chains[i] holds the top vector of block i and its size.
  struct Chain {
    Vector top;
    std::size_t size;
  };
  std::vector<Chain> chains;
  auto apply_nil = [&](Vector v, std::size_t times) {
    for (std::size_t t = 0; t < times; ++t) v = nil.apply(v);
    return v;
  };

  for (std::size_t level = depth; level >= 1; --level) {
    EchelonBasis span(p, n);
    for (const auto& v : kernels[level - 1]) span.insert(v);
    for (const auto& c : chains) span.insert(apply_nil(c.top, c.size - level));
    for (const auto& candidate : kernels[level])
      if (span.insert(candidate)) chains.push_back({candidate, level});
  }

  JordanData out;
  for (const auto& c : chains) {
    out.block_sizes.push_back(c.size);
    for (std::size_t j = 1; j <= c.size; ++j) out.basis.push_back(apply_nil(c.top, c.size - j));
  }
  // Columns of B are the basis vectors, so B^{-1} M B is the Jordan matrix.
  FpMatrix b(p, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) b.set(r, c, out.basis[c][r]);
  out.change_of_basis = inverse(b);
  return out;
}

}  // namespace selfsim
