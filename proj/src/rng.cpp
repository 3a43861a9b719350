#include "rgl/rng.hpp"

#include <cmath>

namespace rgl {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3)-1

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// One block of Philox4x32-10.
std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                    std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                      static_cast<std::uint32_t>(seed_ >> 32)};
  buf_ = philox(ctr, key);
  ++block_;
  pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw ParameterError("uniform: lo > hi");
  return lo + (hi - lo) * uniform01();
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw ParameterError("uniform_index: n must be >= 1");
  // Fixed-point multiply of a 64-bit draw; bias is ~n/2^64, irrelevant here.
  std::size_t i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return gauss_spare_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * M_PI * u2;
  gauss_spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

double RngStream::gamma(double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("gamma: shape must be > 0");
  if (alpha < 1.0) {
    // Boost trick: Gamma(a) = Gamma(a+1) * U^(1/a).
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  // Marsaglia-Tsang squeeze; each attempt consumes one gaussian + one uniform.
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = gaussian();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("beta: shapes must be > 0");
  double ga = gamma(a);
  double gb = gamma(b);
  double s = ga + gb;
  if (s <= 0.0) return 0.5;  // both underflowed; measure-zero corner
  return ga / s;
}

RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RngStream(seed, stream_id);
}

RngStream split(const RngStream& parent, std::uint64_t i) {
  // Mix the parent stream id with the child index; seed stays shared so a
  // whole experiment remains a function of one user-visible seed.
  std::uint64_t child = splitmix64(parent.stream_id() * 0x9E3779B97F4A7C15ull + i + 1);
  return RngStream(parent.seed(), child);
}

std::vector<double> sample_gaussian(RngStream& rng, std::size_t count, double sigma) {
  if (sigma < 0.0) throw ParameterError("sample_gaussian: sigma must be >= 0");
  std::vector<double> out(count);
  for (auto& v : out) v = sigma * rng.gaussian();  // sigma=0 -> exact zeros
  return out;
}

std::vector<double> sample_dirichlet(RngStream& rng, std::size_t n, double concentration) {
  if (n == 0) throw ParameterError("sample_dirichlet: n must be >= 1");
  if (!(concentration > 0.0)) throw ParameterError("sample_dirichlet: concentration must be > 0");
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& v : w) {
    v = rng.gamma(concentration);
    sum += v;
  }
  if (sum <= 0.0) {  // all underflowed; fall back to uniform weights
    for (auto& v : w) v = 1.0 / static_cast<double>(n);
    return w;
  }
  for (auto& v : w) v /= sum;
  return w;
}

double sample_beta(RngStream& rng, double alpha, double beta) {
  return rng.beta(alpha, beta);
}

}  // namespace rgl
