#include "qit/channelcap.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <Eigen/Eigenvalues>

#include "qit/qentropy.hpp"

namespace qit {

ClassicalChannel ClassicalChannel::identity(std::size_t size) {
  std::vector<std::vector<double>> rows(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < size; ++i) rows[i][i] = 1.0;
  return ClassicalChannel(std::move(rows));
}

ClassicalChannel ClassicalChannel::bsc(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("flip probability must lie in [0, 1]");
  return ClassicalChannel({{1.0 - f, f}, {f, 1.0 - f}});
}

ClassicalChannel ClassicalChannel::bec(double e) {
  if (!(e >= 0.0 && e <= 1.0)) throw DomainError("erasure probability must lie in [0, 1]");
  return ClassicalChannel({{1.0 - e, 0.0, e}, {0.0, 1.0 - e, e}});
}

double channel_mutual_info(const ProbDist& px, const ClassicalChannel& ch) {
  if (px.size() != ch.inputs()) throw DimensionError("input distribution does not match channel inputs");
  std::vector<double> table;
  table.reserve(ch.inputs() * ch.outputs());
  for (std::size_t x = 0; x < ch.inputs(); ++x)
    for (std::size_t y = 0; y < ch.outputs(); ++y) table.push_back(px[x] * ch(x, y));
  // Renormalize away the rounding of the products so JointDist validation holds.
  double total = 0.0;
  for (double v : table) total += v;
  for (double& v : table) v /= total;
  return std::max(0.0, mutual_information(JointDist({ch.inputs(), ch.outputs()}, std::move(table))));
}

namespace {

// D(p(·|x) ‖ q) in nats for every x, restricted to outputs with q > 0.
std::vector<double> divergences(const ClassicalChannel& ch, const std::vector<double>& p) {
  std::vector<double> q(ch.outputs(), 0.0);
  for (std::size_t x = 0; x < ch.inputs(); ++x)
    for (std::size_t y = 0; y < ch.outputs(); ++y) q[y] += p[x] * ch(x, y);
  std::vector<double> d(ch.inputs(), 0.0);
  for (std::size_t x = 0; x < ch.inputs(); ++x)
    for (std::size_t y = 0; y < ch.outputs(); ++y) {
      const double w = ch(x, y);
      if (w > 0.0) d[x] += w * std::log(w / q[y]);
    }
  return d;
}

}  // namespace

CapacityResult capacity(const ClassicalChannel& ch, const CapacityOptions& options) {
  const std::size_t nx = ch.inputs();
  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  const double ln2 = std::log(2.0);

  CapacityResult best{0.0, ProbDist(p), kInfinity, 0};
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const auto d = divergences(ch, p);
    // Lower bound log Σ p e^{D}, upper bound max D (both in nats).
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) z += p[x] * std::exp(d[x]);
    const double upper = *std::max_element(d.begin(), d.end()) / ln2;

    const double value = channel_mutual_info(ProbDist(p), ch);
    if (value >= best.capacity || it == 1) best = CapacityResult{value, ProbDist(p), upper, it};
    best.upper_bound = std::min(best.upper_bound, upper);
    if (best.upper_bound - best.capacity <= options.tol) return best;

    for (std::size_t x = 0; x < nx; ++x) p[x] = p[x] * std::exp(d[x]) / z;
    double total = 0.0;
    for (double v : p) total += v;
    for (double& v : p) v /= total;
  }
  throw CapacityNotConverged("Blahut–Arimoto did not converge within " + std::to_string(options.max_iterations) +
                                 " iterations",
                             best);
}

ChannelEnsembleCandidate::ChannelEnsembleCandidate(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("ensemble is empty");
  std::vector<double> w;
  for (const auto& e : entries_) {
    if (e.state.dim() != entries_.front().state.dim()) throw DimensionError("ensemble states differ in dimension");
    w.push_back(e.probability);
  }
  ProbDist check(std::move(w));
}

namespace {

double entropy_of_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(solver.eigenvalues().cwiseMax(0.0));
}

ComplexMatrix channel_output(const QuantumOperation& op, const ComplexVector& psi) {
  const auto d = static_cast<Eigen::Index>(op.out_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : op.kraus()) {
    const ComplexVector v = k * psi;
    out += v * v.adjoint();
  }
  return 0.5 * (out + out.adjoint());
}

double chi_of(const QuantumOperation& op, const std::vector<double>& p, const std::vector<ComplexVector>& states) {
  const auto d = static_cast<Eigen::Index>(op.out_dim());
  ComplexMatrix average = ComplexMatrix::Zero(d, d);
  double conditional = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const ComplexMatrix out = channel_output(op, states[j]);
    average += p[j] * out;
    conditional += p[j] * entropy_of_hermitian(out);
  }
  return std::max(0.0, entropy_of_hermitian(average) - conditional);
}

// Unconstrained parameters → (softmax weights, normalized states).
struct Decoded {
  std::vector<double> weights;
  std::vector<ComplexVector> states;
};

Decoded decode_params(const double* x, std::size_t d) {
  const std::size_t m = d * d;
  Decoded out;
  const double top = *std::max_element(x, x + m);
  double z = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    out.weights.push_back(std::exp(x[j] - top));
    z += out.weights.back();
  }
  for (auto& w : out.weights) w /= z;
  const double* a = x + m;
  for (std::size_t j = 0; j < m; ++j) {
    ComplexVector v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = Complex(a[2 * (j * d + i)], a[2 * (j * d + i) + 1]);
    const double norm = v.norm();
    if (norm < 1e-12) {
      v.setZero();
      v(0) = 1.0;
    } else {
      v /= norm;
    }
    out.states.push_back(std::move(v));
  }
  return out;
}

struct Objective {
  const QuantumOperation* op;
  std::size_t d;
};

double negative_chi(const gsl_vector* x, void* params) {
  const auto* obj = static_cast<const Objective*>(params);
  const Decoded dec = decode_params(x->data, obj->d);
  return -chi_of(*obj->op, dec.weights, dec.states);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RestartOutcome {
  double chi;
  std::vector<double> params;
};

RestartOutcome run_restart(const QuantumOperation& op, const HswOptions& options, std::size_t index) {
  const std::size_t d = op.in_dim();
  const std::size_t dims = d * d + 2 * d * d * d;
  std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(index + 1)));
  std::normal_distribution<double> normal;

  std::vector<double> params(dims);
  for (auto& v : params) v = normal(rng);

  Objective obj{&op, d};
  gsl_multimin_function f{&negative_chi, dims, &obj};
  gsl_vector* x = gsl_vector_alloc(dims);
  gsl_vector* step = gsl_vector_alloc(dims);
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dims);

  double best = kInfinity;
  // Re-seed the simplex at the current minimum until a rerun stops improving.
  for (int round = 0; round < 4; ++round) {
    for (std::size_t i = 0; i < dims; ++i) gsl_vector_set(x, i, params[i]);
    gsl_vector_set_all(step, 0.5);
    gsl_multimin_fminimizer_set(solver, &f, x, step);
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), options.tol) == GSL_SUCCESS) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(solver);
    const bool improved = value < best - 1e-12;
    if (value < best) {
      best = value;
      const gsl_vector* xm = gsl_multimin_fminimizer_x(solver);
      for (std::size_t i = 0; i < dims; ++i) params[i] = gsl_vector_get(xm, i);
    }
    if (!improved) break;
  }
  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return RestartOutcome{-best, std::move(params)};
}

}  // namespace

double hsw_chi_of_ensemble(const QuantumOperation& op, const ChannelEnsembleCandidate& e) {
  if (e.dim() != op.in_dim()) throw DimensionError("ensemble and channel dimensions differ");
  std::vector<double> p;
  std::vector<ComplexVector> states;
  for (const auto& entry : e.entries()) {
    p.push_back(entry.probability);
    states.push_back(entry.state.amplitudes());
  }
  return chi_of(op, p, states);
}

HswResult hsw_capacity_estimate(const QuantumOperation& op, const HswOptions& options) {
  if (options.restarts == 0) throw DomainError("at least one restart is required");
  const std::size_t d = op.in_dim();
  gsl_set_error_handler_off();

  std::vector<std::future<RestartOutcome>> jobs;
  for (std::size_t i = 0; i < options.restarts; ++i)
    jobs.push_back(std::async(std::launch::async, [&op, &options, i] { return run_restart(op, options, i); }));

  std::vector<double> values;
  RestartOutcome best{-1.0, {}};
  for (auto& job : jobs) {
    RestartOutcome r = job.get();
    values.push_back(r.chi);
    if (r.chi > best.chi) best = std::move(r);
  }

  const Decoded dec = decode_params(best.params.data(), d);
  std::vector<ChannelEnsembleCandidate::Entry> entries;
  for (std::size_t j = 0; j < dec.states.size(); ++j)
    entries.push_back({dec.weights[j], PureState::from_amplitudes(dec.states[j])});
  // Softmax weights sum to one only up to rounding.
  double total = 0.0;
  for (const auto& e : entries) total += e.probability;
  for (auto& e : entries) e.probability /= total;
  return HswResult{best.chi, ChannelEnsembleCandidate(std::move(entries)), std::move(values)};
}

SquareRootMeasurement square_root_measurement(const ComplexMatrix& global_projector,
                                              const std::vector<ComplexMatrix>& signals) {
  const auto d = global_projector.rows();
  if (global_projector.cols() != d || d > 16) throw DimensionError("square-root measurement needs a square operator, dim ≤ 16");
  if (signals.empty()) throw DimensionError("no signal projectors given");
  const ComplexMatrix& p = global_projector;

  std::vector<ComplexMatrix> sandwiched;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& pm : signals) {
    if (pm.rows() != d || pm.cols() != d) throw DimensionError("signal projector dimension mismatch");
    sandwiched.push_back(p * pm * p);
    s += sandwiched.back();
  }
  const auto eig = eig_hermitian(0.5 * (s + s.adjoint()));
  RealVector inv_sqrt = RealVector::Zero(d);
  ComplexMatrix support = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (eig.values(i) > tol::recon) {
      inv_sqrt(i) = 1.0 / std::sqrt(eig.values(i));
      support += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
  }
  const ComplexMatrix root = eig.vectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.vectors.adjoint();

  SquareRootMeasurement out;
  for (const auto& m : sandwiched) {
    const ComplexMatrix e = root * m * root;
    out.elements.push_back(0.5 * (e + e.adjoint()));
  }
  out.support = support;
  out.completion = ComplexMatrix::Identity(d, d) - support;
  return out;
}

}  // namespace qit
