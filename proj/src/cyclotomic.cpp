#include "gact/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace gact {

namespace {

// Integer polynomials, lowest degree first, for cyclotomic polynomial setup.
using ZPoly = std::vector<mpz_class>;

ZPoly zpoly_xn_minus_1(long n) {
  ZPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Exact division of integer polynomials (remainder known to be zero).
ZPoly zpoly_div(const ZPoly& num, const ZPoly& den) {
  ZPoly r = num;
  ZPoly q(num.size() - den.size() + 1, 0);
  int dd = static_cast<int>(den.size()) - 1;
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    mpz_class c = r[k + dd] / den[dd];
    q[k] = c;
    for (int j = 0; j <= dd; ++j) r[k + j] -= c * den[j];
  }
  for (const auto& c : r)
    if (c != 0) throw Error("cyclotomic polynomial division not exact");
  return q;
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly p(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
  return p;
}

ZPoly cyclotomic_poly(long n) {
  // x^n - 1 = prod_{d | n} Phi_d.
  ZPoly num = zpoly_xn_minus_1(n);
  ZPoly den{1};
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    den = zpoly_mul(den, cyclotomic_poly(d));
  }
  return zpoly_div(num, den);
}

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::mutex g_field_mutex;
std::map<long, std::shared_ptr<const CycField>> g_fields;

}  // namespace

CycField::CycField(long order) : order_(order) {
  if (order < 1) throw Error("cyclotomic order must be positive");
  degree_ = static_cast<int>(euler_phi(order));
  ZPoly phi = cyclotomic_poly(order);
  cyclo_.assign(phi.size(), Rat(0));
  for (size_t i = 0; i < phi.size(); ++i) cyclo_[i] = Rat(phi[i]);

  // x^k mod Phi for k up to max(2*degree-2, degree), by repeated reduction.
  red_.resize(std::max(2 * degree_ - 1, degree_ + 1));
  std::vector<Rat> cur(degree_, Rat(0));
  cur[0] = 1;
  red_[0] = cur;
  for (int k = 1; k < static_cast<int>(red_.size()); ++k) {
    // multiply by x, then reduce the overflow term via x^deg = -lower part
    std::vector<Rat> nxt(degree_, Rat(0));
    for (int j = 0; j + 1 < degree_; ++j) nxt[j + 1] = cur[j];
    Rat top = cur[degree_ - 1];
    if (top != 0) {
      for (int j = 0; j < degree_; ++j) nxt[j] -= top * cyclo_[j];
    }
    red_[k] = nxt;
    cur = nxt;
  }

  zeta_.resize(order_);
  std::vector<Rat> z(degree_, Rat(0));
  z[0] = 1;
  zeta_[0] = z;
  for (long k = 1; k < order_; ++k) {
    // zeta^k = zeta^{k-1} * x, reduced
    const std::vector<Rat>& prev = zeta_[k - 1];
    std::vector<Rat> nxt(degree_, Rat(0));
    for (int j = 0; j < degree_; ++j) {
      if (prev[j] == 0) continue;
      for (int m = 0; m < degree_; ++m) nxt[m] += prev[j] * red_[j + 1][m];
    }
    zeta_[k] = nxt;
  }

  embed_.resize(degree_);
  const double two_pi = 8.0 * std::atan(1.0);
  for (int k = 0; k < degree_; ++k) {
    double a = two_pi * static_cast<double>(k) / static_cast<double>(order_);
    embed_[k] = {std::cos(a), std::sin(a)};
  }
}

std::shared_ptr<const CycField> CycField::get(long order) {
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto it = g_fields.find(order);
  if (it != g_fields.end()) return it->second;
  auto f = std::shared_ptr<const CycField>(new CycField(order));
  g_fields.emplace(order, f);
  return f;
}

const std::vector<Rat>& CycField::zeta_power(long k) const {
  long m = k % order_;
  if (m < 0) m += order_;
  return zeta_[m];
}

Cyc::Cyc(FieldPtr field, std::vector<Rat> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (!field_) throw Error("null cyclotomic field");
  if (static_cast<int>(c_.size()) != field_->degree())
    throw Error("coefficient vector has wrong length");
}

Cyc Cyc::zero(const FieldPtr& f) {
  return Cyc(f, std::vector<Rat>(f->degree(), Rat(0)));
}

Cyc Cyc::one(const FieldPtr& f) { return rational(f, Rat(1)); }

Cyc Cyc::rational(const FieldPtr& f, const Rat& r) {
  std::vector<Rat> c(f->degree(), Rat(0));
  c[0] = r;
  return Cyc(f, std::move(c));
}

Cyc Cyc::root_of_unity(const FieldPtr& f, long k, long n) {
  if (n <= 0) throw Error("root order must be positive");
  if (f->order() % n != 0)
    throw Error("root order " + std::to_string(n) +
                " does not divide context order " + std::to_string(f->order()));
  long step = f->order() / n;
  return Cyc(f, f->zeta_power(k * step));
}

Cyc Cyc::context_root(const FieldPtr& f, long k) {
  long n = f->order();
  if (n % 2 == 0) return Cyc(f, f->zeta_power(k));
  // odd order: the roots of unity are generated by -zeta
  long m = 2 * n;
  long kk = ((k % m) + m) % m;
  Cyc z(f, f->zeta_power(kk));
  return kk % 2 ? -z : z;
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_part() const { return c_[0]; }

void Cyc::check_same_field(const Cyc& o) const {
  if (!field_ || !o.field_) throw Error("uninitialized scalar");
  if (field_ != o.field_ && field_->order() != o.field_->order())
    throw Error("scalars from different cyclotomic contexts");
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc r = *this;
  r += o;
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  Cyc r = *this;
  r -= o;
  return r;
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  check_same_field(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  check_same_field(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyc Cyc::operator*(const Cyc& o) const {
  check_same_field(o);
  int d = field_->degree();
  std::vector<Rat> full(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      full[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> out(d, Rat(0));
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (full[k] == 0) continue;
    if (k < d) {
      out[k] += full[k];
    } else {
      const std::vector<Rat>& row = field_->reduced_monomial(k);
      for (int m = 0; m < d; ++m) out[m] += full[k] * row[m];
    }
  }
  return Cyc(field_, std::move(out));
}

Cyc& Cyc::operator*=(const Cyc& o) {
  *this = *this * o;
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw Error("division by zero scalar");
  int d = field_->degree();
  if (d == 1) {
    std::vector<Rat> c{Rat(1) / c_[0]};
    return Cyc(field_, std::move(c));
  }
  // Solve M_a x = e_0 where M_a is multiplication by *this in the power basis.
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d + 1, Rat(0)));
  for (int j = 0; j < d; ++j) {
    Cyc col = *this * Cyc(field_, field_->reduced_monomial(j));
    for (int i = 0; i < d; ++i) m[i][j] = col.c_[i];
  }
  m[0][d] = 1;
  // Gaussian elimination.
  for (int col = 0, row = 0; col < d && row < d; ++col) {
    int piv = -1;
    for (int r = row; r < d; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("singular multiplication matrix (not a field?)");
    std::swap(m[piv], m[row]);
    Rat p = m[row][col];
    for (int cc = col; cc <= d; ++cc) m[row][cc] /= p;
    for (int r = 0; r < d; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int cc = col; cc <= d; ++cc) m[r][cc] -= f * m[row][cc];
    }
    ++row;
  }
  std::vector<Rat> x(d);
  for (int i = 0; i < d; ++i) x[i] = m[i][d];
  return Cyc(field_, std::move(x));
}

Cyc Cyc::conj() const {
  // z^j -> z^{N-j}
  int d = field_->degree();
  std::vector<Rat> out(d, Rat(0));
  for (int j = 0; j < d; ++j) {
    if (c_[j] == 0) continue;
    const std::vector<Rat>& zp = field_->zeta_power(-j);
    for (int m = 0; m < d; ++m) out[m] += c_[j] * zp[m];
  }
  return Cyc(field_, std::move(out));
}

bool Cyc::operator==(const Cyc& o) const {
  check_same_field(o);
  return c_ == o.c_;
}

bool Cyc::is_root_of_unity() const {
  if (is_zero()) return false;
  long m = std::lcm(2L, field_->order());
  Cyc p = *this;
  Cyc acc = Cyc::one(field_);
  long e = m;
  while (e > 0) {
    if (e & 1) acc *= p;
    p = p * p;
    e >>= 1;
  }
  return acc == Cyc::one(field_);
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> s{0.0, 0.0};
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    s += c_[k].get_d() * field_->embed_basis(static_cast<int>(k));
  }
  return s;
}

std::string Cyc::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    os << c_[k].get_str();
    if (k > 0) os << " * z^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Cyc Cyc::parse(const FieldPtr& f, const std::string& s) {
  std::vector<Rat> out(f->degree(), Rat(0));
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw Error("empty scalar string");
  // split on '+' (unary minus is part of the numerator)
  size_t pos = 0;
  while (pos < t.size()) {
    size_t nxt = t.find('+', pos);
    std::string term = t.substr(pos, nxt == std::string::npos ? nxt : nxt - pos);
    pos = nxt == std::string::npos ? t.size() : nxt + 1;
    if (term.empty()) throw Error("malformed scalar string: " + s);
    std::string coeff = term;
    long power = 0;
    size_t star = term.find('*');
    size_t zpos = term.find('z');
    if (zpos != std::string::npos) {
      std::string zpart =
          star == std::string::npos ? term.substr(zpos) : term.substr(star + 1);
      coeff = star == std::string::npos ? term.substr(0, zpos)
                                        : term.substr(0, star);
      size_t caret = zpart.find('^');
      power = caret == std::string::npos ? 1 : std::stol(zpart.substr(caret + 1));
      if (coeff.empty()) coeff = "1";
      if (coeff == "-") coeff = "-1";
    }
    Rat r(coeff);
    r.canonicalize();
    if (power < 0 || power >= f->degree()) {
      // allow any exponent < order; reduce through zeta_power
      const std::vector<Rat>& zp = f->zeta_power(power);
      for (int m = 0; m < f->degree(); ++m) out[m] += r * zp[m];
    } else {
      out[power] += r;
    }
  }
  return Cyc(f, std::move(out));
}

Cyc operator*(const Rat& r, const Cyc& z) {
  std::vector<Rat> c = z.coeffs();
  for (auto& x : c) x *= r;
  return Cyc(z.field(), std::move(c));
}

Cyc modulus_squared(const Cyc& z) { return z * z.conj(); }

bool rational_sqrt(const Rat& q, Rat& out) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den) return false;
  out = Rat(rn, rd);
  out.canonicalize();
  return true;
}

}  // namespace gact
