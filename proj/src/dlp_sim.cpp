#include "ecdl/dlp_sim.hpp"

#include <algorithm>
#include <cmath>

#include "ecdl/errors.hpp"

namespace ecdl {

namespace {
constexpr std::uint64_t kMaxFullSupport = 1ull << 24;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

PeakDistribution::PeakDistribution(std::uint64_t n_size, std::uint64_t s, std::uint64_t q)
    : n_(n_size) {
  if (n_ == 0 || (n_ & (n_ - 1)) != 0) throw domain_fault("peak size must be a power of two");
  if (q == 0 || s >= q) throw domain_fault("peak center rational out of range");
  unsigned __int128 num = static_cast<unsigned __int128>(n_) * s;
  center_int_ = static_cast<std::uint64_t>(num / q);
  std::uint64_t rem = static_cast<std::uint64_t>(num % q);
  frac_ = static_cast<double>(rem) / static_cast<double>(q);
  degenerate_ = (rem == 0);
  center_ = static_cast<double>(center_int_) + frac_;
  numerator_ = std::sin(kPi * frac_);
  numerator_ *= numerator_;
  build();
}

PeakDistribution::PeakDistribution(std::uint64_t n_size, double center) : n_(n_size) {
  if (n_ == 0 || (n_ & (n_ - 1)) != 0) throw domain_fault("peak size must be a power of two");
  double wrapped = std::fmod(center, static_cast<double>(n_));
  if (wrapped < 0) wrapped += static_cast<double>(n_);
  center_ = wrapped;
  center_int_ = static_cast<std::uint64_t>(std::floor(wrapped));
  frac_ = wrapped - std::floor(wrapped);
  degenerate_ = (frac_ == 0.0);
  numerator_ = std::sin(kPi * frac_);
  numerator_ *= numerator_;
  build();
}

void PeakDistribution::build() {
  if (n_ > kMaxFullSupport)
    throw size_limit_error("peak support above 2^24 not materialized");
  if (degenerate_) return;  // unit mass on the center, no table needed
  prefix_.resize(n_ + 1, 0.0);
  double nn = static_cast<double>(n_);
  double half = nn / 2;
  double acc = 0;
  for (std::uint64_t x = 0; x < n_; ++x) {
    // wrapped distance to the center in (-N/2, N/2]
    double d = static_cast<double>(x) - center_;
    if (d > half) d -= nn;
    if (d <= -half) d += nn;
    double den = nn * std::sin(kPi * d / nn);
    acc += numerator_ / (den * den);
    prefix_[x + 1] = acc;
  }
  tail_bound_ = 0;  // full support
}

double PeakDistribution::pmf(std::uint64_t x) const {
  if (x >= n_) return 0;
  if (degenerate_) return x == center_int_ ? 1.0 : 0.0;
  return prefix_[x + 1] - prefix_[x];
}

double PeakDistribution::total_mass() const {
  if (degenerate_) return 1.0;
  return prefix_[n_];
}

double PeakDistribution::mass_of_range(std::uint64_t lo, std::uint64_t hi) const {
  if (lo > hi || lo >= n_) return 0;
  hi = std::min<std::uint64_t>(hi, n_ - 1);
  if (degenerate_) return (center_int_ >= lo && center_int_ <= hi) ? 1.0 : 0.0;
  return prefix_[hi + 1] - prefix_[lo];
}

std::uint64_t PeakDistribution::sample(Rng& rng) const {
  if (degenerate_) return center_int_;
  double u = rng.next_double() * prefix_[n_];
  auto it = std::upper_bound(prefix_.begin() + 1, prefix_.end(), u);
  std::uint64_t idx = static_cast<std::uint64_t>(it - (prefix_.begin() + 1));
  return std::min<std::uint64_t>(idx, n_ - 1);
}

AnalyticSampler::AnalyticSampler(const DlpInstance& inst, unsigned n_bits) {
  if (inst.q > Int(1ul << 20)) throw domain_fault("analytic sampler needs q <= 2^20");
  if (n_bits < bit_length(inst.q)) throw domain_fault("need n >= ceil(log2 q)");
  q_ = inst.q;
  d_ = inst.d;
  n_size_ = 1ull << n_bits;
}

const PeakDistribution& AnalyticSampler::peak_for(std::uint64_t s) {
  auto it = cache_.find(s);
  if (it == cache_.end()) {
    it = cache_.emplace(s, std::make_unique<PeakDistribution>(n_size_, s, to_u64(q_))).first;
  }
  return *it->second;
}

MeasurementRecord AnalyticSampler::sample(Rng& rng) {
  std::uint64_t q = to_u64(q_);
  std::uint64_t d = to_u64(d_);
  MeasurementRecord rec;
  rec.k = rng.below(q);
  rec.x_prime = peak_for(rec.k).sample(rng);
  rec.y_prime = peak_for((static_cast<unsigned __int128>(rec.k) * d) % q).sample(rng);
  return rec;
}

MeasurementRecord simulate_analytic(const DlpInstance& inst, unsigned n_bits, Rng& rng) {
  AnalyticSampler sampler(inst, n_bits);
  return sampler.sample(rng);
}

namespace {

using cplx = std::complex<double>;

struct SemiclassicalChain {
  std::uint64_t q;
  std::vector<std::uint64_t> shifts;  // per step, in application order
  std::vector<unsigned> out_bit;      // significance of the measured bit per step
};

// Builds the 2n-step schedule: the x-register chain (adds of 2^i P) then the
// y-register chain (adds of 2^i Q), control qubits measured from highest
// addition significance to lowest. Step m of a chain measures outcome bit m.
std::vector<SemiclassicalChain> build_chains(std::uint64_t q, std::uint64_t d, unsigned n_bits,
                                             MeasurementOrder order) {
  std::vector<std::uint64_t> pow2(n_bits);
  std::uint64_t pw = 1;
  for (unsigned i = 0; i < n_bits; ++i) {
    pow2[i] = pw;
    pw = (pw * 2) % q;
  }
  std::vector<SemiclassicalChain> chains(2);
  for (int c = 0; c < 2; ++c) {
    chains[c].q = q;
    for (unsigned m = 0; m < n_bits; ++m) {
      unsigned i = (order == MeasurementOrder::HighToLow) ? (n_bits - 1 - m) : m;
      std::uint64_t t = pow2[i];
      if (c == 1) t = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t) * d) % q);
      chains[c].shifts.push_back(t);
      chains[c].out_bit.push_back(m);
    }
  }
  return chains;
}

double rotation_for(const std::vector<int>& bits_so_far) {
  // theta_m = 2 pi sum_{r<m} b_r 2^{r-m-1}
  double gamma = 0;
  unsigned m = static_cast<unsigned>(bits_so_far.size());
  for (unsigned r = 0; r < m; ++r)
    if (bits_so_far[r]) gamma += std::ldexp(1.0, static_cast<int>(r) - static_cast<int>(m) - 1);
  return 2.0 * kPi * gamma;
}

}  // namespace

SemiclassicalResult simulate_semiclassical(const DlpInstance& inst, unsigned n_bits, Rng& rng,
                                           bool loss_model, MeasurementOrder order) {
  if (inst.q > (1 << 14)) throw domain_fault("semiclassical simulation needs q <= 2^14");
  if (n_bits < bit_length(inst.q)) throw domain_fault("need n >= ceil(log2 q)");
  std::uint64_t q = to_u64(inst.q);
  std::uint64_t d = to_u64(inst.d);
  auto chains = build_chains(q, d, n_bits, order);

  std::vector<cplx> psi(q, cplx(0, 0));
  std::uint64_t k0 = 1 + rng.below(q - 1);  // random offset k P != O
  psi[k0] = 1.0;
  double kept = 1.0;

  SemiclassicalResult out;
  std::uint64_t xy[2] = {0, 0};
  std::vector<cplx> shifted(q), branch(q);
  for (int c = 0; c < 2; ++c) {
    std::vector<int> bits;
    for (unsigned m = 0; m < n_bits; ++m) {
      std::uint64_t t = chains[c].shifts[m];
      if (loss_model) {
        double deficit = std::norm(psi[t % q]) + std::norm(psi[(q - t % q) % q]);
        if (deficit > 0) {
          psi[t % q] = 0;
          psi[(q - t % q) % q] = 0;
          double rest = 1.0 - deficit;
          kept *= rest;
          double scale = 1.0 / std::sqrt(rest);
          for (auto& a : psi) a *= scale;
        }
      }
      double theta = rotation_for(bits);
      cplx phase = std::polar(1.0, theta);
      for (std::uint64_t s = 0; s < q; ++s) shifted[s] = psi[(s + q - t % q) % q];
      // outcome b amplitude: (psi + (-1)^b e^{i theta} shifted)/2
      double p0 = 0, p1 = 0;
      for (std::uint64_t s = 0; s < q; ++s) {
        cplx plus = (psi[s] + phase * shifted[s]) * 0.5;
        cplx minus = (psi[s] - phase * shifted[s]) * 0.5;
        p0 += std::norm(plus);
        p1 += std::norm(minus);
      }
      double total = p0 + p1;
      if (std::abs(total - 1.0) > 1e-9)
        throw simulation_fault("semiclassical step lost normalization");
      int b = (rng.next_double() * total < p0) ? 0 : 1;
      double pb = (b == 0) ? p0 : p1;
      double scale = 1.0 / std::sqrt(pb);
      for (std::uint64_t s = 0; s < q; ++s) {
        cplx amp = (b == 0) ? (psi[s] + phase * shifted[s]) : (psi[s] - phase * shifted[s]);
        psi[s] = amp * 0.5 * scale;
      }
      bits.push_back(b);
      if (b) xy[c] |= (1ull << chains[c].out_bit[m]);
    }
  }
  out.record.x_prime = xy[0];
  out.record.y_prime = xy[1];
  out.record.k = k0;  // diagnostics: the random offset, not a measured value
  out.norm_deficit = 1.0 - kept;
  return out;
}

std::vector<double> joint_analytic_law(std::uint64_t q, std::uint64_t d, unsigned n_bits) {
  std::uint64_t N = 1ull << n_bits;
  if (N > 512) throw size_limit_error("joint law materialization capped at N = 512");
  std::vector<double> law(N * N, 0.0);
  for (std::uint64_t k = 0; k < q; ++k) {
    PeakDistribution px(N, k, q);
    PeakDistribution py(N, (static_cast<unsigned __int128>(k) * d) % q, q);
    for (std::uint64_t x = 0; x < N; ++x) {
      double wx = px.pmf(x);
      if (wx == 0) continue;
      for (std::uint64_t y = 0; y < N; ++y) {
        double wy = py.pmf(y);
        if (wy != 0) law[x * N + y] += wx * wy / static_cast<double>(q);
      }
    }
  }
  return law;
}

namespace {

void enumerate_rec(const std::vector<SemiclassicalChain>& chains, unsigned n_bits,
                   std::vector<cplx>& psi, double prob, int c, unsigned m,
                   std::vector<int>& bits, std::uint64_t x_acc, std::uint64_t y_acc,
                   std::vector<double>& law) {
  std::uint64_t N = 1ull << n_bits;
  if (c == 2) {
    law[x_acc * N + y_acc] += prob;
    return;
  }
  if (m == n_bits) {
    std::vector<int> fresh;
    std::swap(fresh, bits);
    enumerate_rec(chains, n_bits, psi, prob, c + 1, 0, bits, x_acc, y_acc, law);
    std::swap(fresh, bits);
    return;
  }
  std::uint64_t q = chains[c].q;
  std::uint64_t t = chains[c].shifts[m] % q;
  double theta = rotation_for(bits);
  cplx phase = std::polar(1.0, theta);
  std::vector<cplx> shifted(q);
  for (std::uint64_t s = 0; s < q; ++s) shifted[s] = psi[(s + q - t) % q];
  for (int b = 0; b < 2; ++b) {
    std::vector<cplx> next(q);
    double pb = 0;
    for (std::uint64_t s = 0; s < q; ++s) {
      cplx amp = (psi[s] + (b ? -phase : phase) * shifted[s]) * 0.5;
      next[s] = amp;
      pb += std::norm(amp);
    }
    if (pb < 1e-300) continue;
    double scale = 1.0 / std::sqrt(pb);
    for (auto& a : next) a *= scale;
    bits.push_back(b);
    std::uint64_t nx = x_acc, ny = y_acc;
    if (b) {
      if (c == 0)
        nx |= (1ull << chains[c].out_bit[m]);
      else
        ny |= (1ull << chains[c].out_bit[m]);
    }
    enumerate_rec(chains, n_bits, next, prob * pb, c, m + 1, bits, nx, ny, law);
    bits.pop_back();
  }
}

}  // namespace

std::vector<double> enumerate_semiclassical_law(const DlpInstance& inst, unsigned n_bits,
                                                MeasurementOrder order, std::uint64_t offset) {
  std::uint64_t N = 1ull << n_bits;
  if (N > 512) throw size_limit_error("law enumeration capped at N = 512");
  std::uint64_t q = to_u64(inst.q);
  std::uint64_t d = to_u64(inst.d);
  if (offset == 0 || offset >= q) throw domain_fault("offset must be in (0, q)");
  auto chains = build_chains(q, d, n_bits, order);
  std::vector<double> law(N * N, 0.0);
  // every offset k0 P has uniform weight on all phase eigenstates, so the
  // outcome law is offset-independent (a property the tests verify)
  std::vector<cplx> psi(q, cplx(0, 0));
  psi[offset] = 1.0;
  std::vector<int> bits;
  enumerate_rec(chains, n_bits, psi, 1.0, 0, 0, bits, 0, 0, law);
  return law;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw domain_fault("law size mismatch");
  double sa = 0, sb = 0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  double tv = 0;
  for (size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] / sa - b[i] / sb);
  return tv / 2;
}

std::optional<Int> postprocess(const MeasurementRecord& rec, const DlpInstance& inst,
                               unsigned n_bits, unsigned window) {
  std::uint64_t q = to_u64(inst.q);
  unsigned __int128 N = static_cast<unsigned __int128>(1) << n_bits;
  auto round_to_candidate = [&](std::uint64_t v) -> std::uint64_t {
    // round(v q / N) = floor((2 v q + N) / (2 N))
    unsigned __int128 num = 2 * static_cast<unsigned __int128>(v) * q + N;
    return static_cast<std::uint64_t>(num / (2 * N));
  };
  std::uint64_t k_hat = round_to_candidate(rec.x_prime);
  std::uint64_t m_hat = round_to_candidate(rec.y_prime);
  long w = static_cast<long>(window);
  for (long d1 = -w; d1 <= w; ++d1) {
    long kt_raw = static_cast<long>(k_hat) + d1;
    std::uint64_t kt = static_cast<std::uint64_t>(((kt_raw % static_cast<long>(q)) +
                                                   static_cast<long>(q)) %
                                                  static_cast<long>(q));
    if (kt == 0) continue;  // x' rounding to 0 carries no information
    Int inv_kt = inv_mod(Int(static_cast<unsigned long>(kt)), inst.q);
    for (long d2 = -w; d2 <= w; ++d2) {
      long mt_raw = static_cast<long>(m_hat) + d2;
      std::uint64_t mt = static_cast<std::uint64_t>(((mt_raw % static_cast<long>(q)) +
                                                     static_cast<long>(q)) %
                                                    static_cast<long>(q));
      Int d_tilde = mod_floor(Int(static_cast<unsigned long>(mt)) * inv_kt, inst.q);
      if (scalar_mul(d_tilde, inst.base, inst.curve) == inst.target) return d_tilde;
    }
  }
  return std::nullopt;
}

SuccessProbability success_probability(std::uint64_t q, std::uint64_t d, unsigned n_bits,
                                       unsigned window) {
  if (q < 2 || q > (1ull << 20)) throw domain_fault("success_probability needs 2 <= q <= 2^20");
  if (n_bits < bit_length(Int(static_cast<unsigned long>(q))))
    throw domain_fault("need n >= ceil(log2 q)");
  std::uint64_t N = 1ull << n_bits;
  long w = static_cast<long>(window);

  // candidate rounding intervals: x' with round(x' q / N) = khat
  auto interval_lo = [&](std::uint64_t khat) -> std::int64_t {
    // smallest x' with 2 x' q + N >= 2 N khat
    __int128 num = 2 * static_cast<__int128>(N) * khat - static_cast<__int128>(N);
    if (num <= 0) return 0;
    return static_cast<std::int64_t>((num + 2 * q - 1) / (2 * q));
  };

  // acceptance residues per khat: m_hat mod q in {d (khat+d1) - d2}
  std::uint64_t khat_max = q;  // round((N-1) q / N) <= q
  std::vector<std::vector<std::uint32_t>> accepted(khat_max + 1);
  for (std::uint64_t khat = 0; khat <= khat_max; ++khat) {
    std::vector<char> seen(q, 0);
    for (long d1 = -w; d1 <= w; ++d1) {
      long kt_raw = static_cast<long>(khat) + d1;
      std::uint64_t kt =
          static_cast<std::uint64_t>(((kt_raw % static_cast<long>(q)) + static_cast<long>(q)) %
                                     static_cast<long>(q));
      if (kt == 0) continue;
      std::uint64_t base = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(d) * kt) % q);
      for (long d2 = -w; d2 <= w; ++d2) {
        long res_raw = static_cast<long>(base) - d2;
        std::uint64_t res =
            static_cast<std::uint64_t>(((res_raw % static_cast<long>(q)) + static_cast<long>(q)) %
                                       static_cast<long>(q));
        if (!seen[res]) {
          seen[res] = 1;
          accepted[khat].push_back(static_cast<std::uint32_t>(res));
        }
      }
    }
  }

  double total = 0, truncation = 0;
  std::vector<double> y_residue_mass(q);
  for (std::uint64_t k = 0; k < q; ++k) {
    PeakDistribution px(N, k, q);
    PeakDistribution py(N, static_cast<std::uint64_t>((static_cast<unsigned __int128>(k) * d) % q),
                        q);
    truncation += (px.tail_bound() + py.tail_bound()) / static_cast<double>(q);
    // mass of each m_hat residue class under the y' peak
    std::fill(y_residue_mass.begin(), y_residue_mass.end(), 0.0);
    for (std::uint64_t mh = 0; mh <= khat_max; ++mh) {
      std::int64_t lo = interval_lo(mh);
      std::int64_t hi = interval_lo(mh + 1) - 1;
      if (lo > hi || lo >= static_cast<std::int64_t>(N)) continue;
      hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(N) - 1);
      y_residue_mass[mh % q] += py.mass_of_range(static_cast<std::uint64_t>(lo),
                                                 static_cast<std::uint64_t>(hi));
    }
    double succ_k = 0;
    for (std::uint64_t kh = 0; kh <= khat_max; ++kh) {
      std::int64_t lo = interval_lo(kh);
      std::int64_t hi = interval_lo(kh + 1) - 1;
      if (lo > hi || lo >= static_cast<std::int64_t>(N)) continue;
      hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(N) - 1);
      double mass_x = px.mass_of_range(static_cast<std::uint64_t>(lo),
                                       static_cast<std::uint64_t>(hi));
      if (mass_x == 0) continue;
      double mass_y = 0;
      for (std::uint32_t res : accepted[kh]) mass_y += y_residue_mass[res];
      succ_k += mass_x * mass_y;
    }
    total += succ_k / static_cast<double>(q);
  }
  return SuccessProbability{total, truncation};
}

}  // namespace ecdl
