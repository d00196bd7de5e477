#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cosetlab {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown on misuse of an operation (e.g. mixing elements of different groups).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a documented precondition fails (e.g. element outside the
/// supported normalizer).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on unsupported or malformed configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a requested computation would exceed a hard size budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an assertion-class invariant of an experiment fails.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// p^a for possibly negative a, as an exact rational.
inline Rat pow_rat(long p, const Int& a) {
  if (!a.fits_slong_p()) throw BudgetError("exponent too large: " + a.get_str());
  long e = a.get_si();
  Int pk = pow_int(Int(p), static_cast<unsigned long>(e < 0 ? -e : e));
  Rat r = (e < 0) ? Rat(1, pk) : Rat(pk);
  r.canonicalize();
  return r;
}

/// Floor of an exact rational.
inline Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

/// q reduced mod 1 into [0, 1).
inline Rat rat_mod1(const Rat& q) {
  Rat r = q - Rat(rat_floor(q));
  r.canonicalize();
  return r;
}

inline int cmp_rat(const Rat& a, const Rat& b) { return mpq_cmp(a.get_mpq_t(), b.get_mpq_t()); }

inline std::size_t hash_int(const Int& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = 1469598103934665603ULL;
  int sz = p->_mp_size;
  h = (h ^ static_cast<std::size_t>(sz)) * 1099511628211ULL;
  for (int i = 0; i < (sz < 0 ? -sz : sz); ++i)
    h = (h ^ static_cast<std::size_t>(mpz_getlimbn(p, i))) * 1099511628211ULL;
  return h;
}

inline std::size_t hash_combine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

inline std::size_t hash_rat(const Rat& q) {
  return hash_combine(hash_int(q.get_num()), hash_int(q.get_den()));
}

/// Gaussian rational: exact complex scalar with rational real and imaginary
/// parts. The workhorse scalar of every exact-mode computation.
struct RatCplx {
  Rat re, im;

  RatCplx() : re(0), im(0) {}
  RatCplx(Rat r) : re(std::move(r)), im(0) {}
  RatCplx(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  RatCplx(long r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  RatCplx conj() const { return {re, Rat(-im)}; }
  /// |z|^2, exact.
  Rat abs_sq() const { return re * re + im * im; }

  RatCplx operator+(const RatCplx& o) const { return {re + o.re, im + o.im}; }
  RatCplx operator-(const RatCplx& o) const { return {re - o.re, im - o.im}; }
  RatCplx operator-() const { return {Rat(-re), Rat(-im)}; }
  RatCplx operator*(const RatCplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RatCplx operator*(const Rat& s) const { return {re * s, im * s}; }
  RatCplx operator/(const Rat& s) const {
    if (s == 0) throw UsageError("division by zero");
    return {re / s, im / s};
  }
  RatCplx operator/(const RatCplx& o) const {
    Rat n = o.abs_sq();
    if (n == 0) throw UsageError("division by zero");
    return (*this * o.conj()) / n;
  }
  RatCplx& operator+=(const RatCplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RatCplx& operator-=(const RatCplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  bool operator==(const RatCplx& o) const { return re == o.re && im == o.im; }
  bool operator!=(const RatCplx& o) const { return !(*this == o); }

  std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }
};

inline RatCplx conj(const RatCplx& z) { return z.conj(); }

std::string rat_str(const Rat& q);
std::string cplx_str(const RatCplx& z);
std::string double_str(double x);
Rat parse_rat(const std::string& s);

/// Deterministic 64-bit generator (splitmix64). Hand-rolled so that seeded
/// experiments are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi], inclusive.
  long uniform(long lo, long hi) {
    if (hi < lo) throw UsageError("bad uniform range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
  }

  /// Uniform double in (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform01(), v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cosetlab
