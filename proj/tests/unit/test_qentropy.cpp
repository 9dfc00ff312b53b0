#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "properties.hpp"
#include "qit/qentropy.hpp"
#include "support.hpp"

using namespace qit;
using namespace qit::testing;

namespace {

DensityMatrix ket0() { return DensityMatrix::basis_state(2, 0); }
DensityMatrix plus() { return plus_state().projector(); }

}  // namespace

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann_entropy(ket0()), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(2)), 1.0, 1e-12);
  const double s = von_neumann_entropy(half_zero_half_plus());
  EXPECT_NEAR(s, mixed_fixture_entropy(0.5), 1e-12);
  EXPECT_NEAR(s, 0.60088, 1e-5);
  EXPECT_LT(s, 1.0);  // differs from H(½,½)
}

TEST(VonNeumann, MatchesEigenOracleAndBounds) {
  Rng rng = seeded(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto rho = random_density_of_rank(d, 1 + rng() % d, rng);
    const double s = von_neumann_entropy(rho);
    EXPECT_NEAR(s, entropy_oracle(rho.matrix()), 1e-10);
    EXPECT_GE(s, -1e-12);
    EXPECT_LE(s, std::log2(static_cast<double>(d)) + 1e-10);
  }
}

TEST(VonNeumann, ClosedFormFixtureOverP) {
  for (double p = 0.05; p < 1.0; p += 0.05) {
    const ComplexMatrix m = p * ket0().matrix() + (1 - p) * plus().matrix();
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_matrix(m)), mixed_fixture_entropy(p), 1e-10) << p;
  }
}

TEST(VonNeumann, MaximalOnlyAtMaximallyMixed) {
  Rng rng = seeded(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto rho = random_density(d, rng);
    // log₂d − S ≥ D(ρ‖I/d) > 0, and D ≥ ‖ρ − I/d‖²₂ / (2 ln 2) gives a concrete margin.
    const ComplexMatrix diff = rho.matrix() - DensityMatrix::maximally_mixed(d).matrix();
    const double margin = diff.squaredNorm() / (2 * std::numbers::ln2);
    EXPECT_LE(von_neumann_entropy(rho), std::log2(static_cast<double>(d)) - margin + 1e-10);
  }
}

TEST(QRelativeEntropy, Examples) {
  Rng rng = seeded(43);
  const auto r = random_density(3, rng);
  EXPECT_NEAR(q_relative_entropy(r, r), 0.0, 1e-10);
  EXPECT_NEAR(q_relative_entropy(ket0(), DensityMatrix::maximally_mixed(2)), 1.0, 1e-12);
  EXPECT_EQ(q_relative_entropy(plus(), ket0()), kInfinity);
  EXPECT_THROW(q_relative_entropy(ket0(), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(QRelativeEntropy, CommutingCaseReducesToClassical) {
  Rng rng = seeded(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto p = random_dist(d, rng), q = random_dist(d, rng);
    EXPECT_NEAR(q_relative_entropy(diag_state(p.probs()), diag_state(q.probs())), relative_entropy(p, q), 1e-10);
  }
}

TEST(QRelativeEntropy, KleinOnRandomPairs) {
  Rng rng = seeded(45);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 3;
    EXPECT_GE(q_relative_entropy(random_density(d, rng), random_density(d, rng)), -1e-10);
  }
}

TEST(Bipartite, ProductState) {
  Rng rng = seeded(46);
  const auto a = random_density(2, rng), b = random_density(3, rng);
  const auto ab = tensor_product(a, b);
  EXPECT_NEAR(q_joint_entropy(ab), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-10);
  EXPECT_NEAR(q_mutual_information(ab), 0.0, 1e-10);
}

TEST(Bipartite, BellState) {
  const auto bell = bell_state().projector({2, 2});
  EXPECT_NEAR(q_joint_entropy(bell), 0.0, 1e-10);
  EXPECT_NEAR(s_of(bell, {0}), 1.0, 1e-10);
  EXPECT_NEAR(s_of(bell, {1}), 1.0, 1e-10);
  EXPECT_NEAR(q_conditional_entropy(bell), -1.0, 1e-10);
  EXPECT_NEAR(q_mutual_information(bell), 2.0, 1e-10);
}

TEST(Bipartite, ArakiLiebFixture) {
  const auto rho = tensor_product(ket0(), DensityMatrix::maximally_mixed(2));
  EXPECT_NEAR(q_joint_entropy(rho), 1.0, 1e-10);
  EXPECT_NEAR(s_of(rho, {0}), 0.0, 1e-10);
  EXPECT_NEAR(s_of(rho, {1}), 1.0, 1e-10);
}

TEST(Bipartite, ReducedEntropiesMatchOracle) {
  Rng rng = seeded(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t da = card(rng), db = card(rng);
    const auto rho = random_bipartite(da, db, rng);
    const auto ia = static_cast<Eigen::Index>(da), ib = static_cast<Eigen::Index>(db);
    EXPECT_NEAR(s_of(rho, {0}), entropy_oracle(partial_trace_oracle(rho.matrix(), ia, ib, true)), 1e-10);
    EXPECT_NEAR(s_of(rho, {1}), entropy_oracle(partial_trace_oracle(rho.matrix(), ia, ib, false)), 1e-10);
    EXPECT_NEAR(q_conditional_entropy(rho), q_joint_entropy(rho) - s_of(rho, {1}), 1e-10);
  }
}

TEST(Bipartite, MissingDimsRejected) {
  EXPECT_THROW(q_joint_entropy(DensityMatrix::maximally_mixed(4)), DimensionError);
  EXPECT_THROW(q_mutual_information(DensityMatrix::maximally_mixed(4)), DimensionError);
}

TEST(Entanglement, PureStateExamples) {
  EXPECT_FALSE(is_entangled_pure(PureState::basis(4, 1), 2, 2));
  EXPECT_TRUE(is_entangled_pure(bell_state(), 2, 2));
  EXPECT_FALSE(is_entangled_pure(tensor_product(PureState::basis(2, 0), plus_state()), 2, 2));
}

TEST(Entanglement, RandomPureStatesAgreeWithConditionalEntropy) {
  Rng rng = seeded(48);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random_pure_state(4, rng);
    const bool ent = is_entangled_pure(psi, 2, 2);
    EXPECT_EQ(ent, q_conditional_entropy(psi.projector({2, 2})) < -tol::eig);
    // Products of random states are never entangled.
    const auto prod = tensor_product(random_pure_state(2, rng), random_pure_state(3, rng));
    EXPECT_FALSE(is_entangled_pure(prod, 2, 3));
  }
}

TEST(Holevo, Examples) {
  const Ensemble orth({{0.5, ket0()}, {0.5, DensityMatrix::basis_state(2, 1)}});
  EXPECT_NEAR(holevo_chi(orth), 1.0, 1e-10);
  const Ensemble overlap({{0.5, ket0()}, {0.5, plus()}});
  EXPECT_NEAR(holevo_chi(overlap), mixed_fixture_entropy(0.5), 1e-10);
  Rng rng = seeded(49);
  EXPECT_NEAR(holevo_chi(Ensemble({{1.0, random_density(3, rng)}})), 0.0, 1e-10);
}

TEST(Holevo, BoundedByShannonEntropyOfWeights) {
  Rng rng = seeded(50);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = card(rng), d = card(rng);
    const auto w = random_dist(k, rng);
    std::vector<Ensemble::Entry> entries;
    for (std::size_t i = 0; i < k; ++i) entries.push_back({w[i], random_density_of_rank(d, 1 + rng() % d, rng)});
    const double chi = holevo_chi(Ensemble(entries));
    EXPECT_GE(chi, -1e-10);
    EXPECT_LE(chi, shannon_entropy(w) + 1e-10);
  }
}

TEST(Holevo, EnsembleValidation) {
  EXPECT_THROW(Ensemble({{0.5, ket0()}, {0.5, DensityMatrix::maximally_mixed(3)}}), DimensionError);
  EXPECT_THROW(Ensemble({{0.7, ket0()}, {0.7, plus()}}), DomainError);
}

TEST(Holevo, SimulatedMeasurementsStayBelowChi) {
  Rng rng = seeded(51);
  for (int trial = 0; trial < 200; ++trial) EXPECT_GE(holevo_margin(rng), -tol::recon);
}

TEST(EntropyExchange, Examples) {
  Rng rng = seeded(52);
  const auto rho = random_density(3, rng);
  EXPECT_NEAR(entropy_exchange(rho, QuantumOperation::identity(3)), 0.0, 1e-9);
  EXPECT_NEAR(entropy_exchange(rho, QuantumOperation::unitary(random_unitary(3, rng))), 0.0, 1e-9);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  const auto dep = QuantumOperation::depolarizing(1.0);
  EXPECT_NEAR(entropy_exchange(mixed, dep), w_matrix_entropy(mixed.matrix(), dep.kraus()), 1e-9);
  EXPECT_NEAR(entropy_exchange(mixed, dep), 2.0, 1e-9);
}

TEST(EntropyExchange, AgreesWithWMatrixOracle) {
  Rng rng = seeded(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto rho = random_density_of_rank(d, 1 + rng() % d, rng);
    const auto op = random_channel(d, 1 + rng() % 5, rng);
    EXPECT_NEAR(entropy_exchange(rho, op), w_matrix_entropy(rho.matrix(), op.kraus()), tol::recon);
  }
}

TEST(EntropyExchange, RejectsNonTracePreserving) {
  std::vector<ComplexMatrix> k{0.5 * ComplexMatrix::Identity(2, 2)};
  EXPECT_ANY_THROW(entropy_exchange(ket0(), QuantumOperation::from_kraus(k)));
}

TEST(CoherentInformation, Examples) {
  Rng rng = seeded(54);
  const auto rho = random_density(2, rng);
  EXPECT_NEAR(coherent_information(rho, QuantumOperation::identity(2)), von_neumann_entropy(rho), 1e-9);
  EXPECT_NEAR(coherent_information(rho, QuantumOperation::unitary(random_unitary(2, rng))), von_neumann_entropy(rho), 1e-9);
  EXPECT_NEAR(coherent_information(DensityMatrix::maximally_mixed(2), QuantumOperation::depolarizing(1.0)), -1.0, 1e-9);
}

TEST(CoherentInformation, DataProcessing) {
  Rng rng = seeded(55);
  for (int trial = 0; trial < 200; ++trial) EXPECT_GE(quantum_dpi_margin(rng), -tol::recon);
}

TEST(QuantumFano, Examples) {
  Rng rng = seeded(56);
  const auto rho = random_density(2, rng);
  EXPECT_NEAR(quantum_fano_gap(rho, QuantumOperation::identity(2)), 0.0, 1e-9);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  const auto dep = QuantumOperation::depolarizing(1.0);
  EXPECT_NEAR(entanglement_fidelity(mixed, dep), 0.25, 1e-10);
  // H(¼) + ¾ log₂3 − 2
  EXPECT_NEAR(quantum_fano_gap(mixed, dep), hbin(0.25) + 0.75 * std::log2(3.0) - 2.0, 1e-9);
}

TEST(QuantumFano, RandomQubitChannelsNonNegative) {
  Rng rng = seeded(57);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density_of_rank(2, 1 + rng() % 2, rng);
    EXPECT_GE(quantum_fano_gap(rho, random_channel(2, 1 + rng() % 4, rng)), -tol::recon);
  }
}

TEST(Fidelity, Examples) {
  Rng rng = seeded(58);
  const auto r = random_density(3, rng);
  EXPECT_NEAR(fidelity(r, r), 1.0, 1e-8);
  EXPECT_NEAR(fidelity(ket0(), DensityMatrix::basis_state(2, 1)), 0.0, 1e-8);
  EXPECT_NEAR(fidelity(ket0(), plus()), 1.0 / std::sqrt(2.0), 1e-8);
  EXPECT_THROW(fidelity(ket0(), r), DimensionError);
}

TEST(Fidelity, SymmetricBoundedAndPureOverlap) {
  Rng rng = seeded(59);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto a = random_density(d, rng), b = random_density(d, rng);
    const double f = fidelity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), tol::recon);
    EXPECT_GE(f, -1e-12);
    EXPECT_LE(f, 1.0 + 1e-9);
    const auto psi = random_pure_state(d, rng), phi = random_pure_state(d, rng);
    EXPECT_NEAR(fidelity(psi.projector(), phi.projector()), std::abs(psi.amplitudes().dot(phi.amplitudes())), 1e-6);
  }
}

TEST(EntanglementFidelity, Examples) {
  Rng rng = seeded(60);
  const auto rho = random_density(3, rng);
  EXPECT_NEAR(entanglement_fidelity(rho, QuantumOperation::identity(3)), 1.0, 1e-9);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  for (double f : {0.0, 0.1, 0.5, 0.9, 1.0})
    EXPECT_NEAR(entanglement_fidelity(mixed, QuantumOperation::depolarizing(f)), 1 - 0.75 * f, 1e-10) << f;
}

TEST(EntanglementFidelity, TwoFormsAgree) {
  Rng rng = seeded(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto rho = random_density_of_rank(d, 1 + rng() % d, rng);
    const auto op = random_channel(d, 1 + rng() % 4, rng);
    const double a = entanglement_fidelity(rho, op);
    EXPECT_NEAR(a, entanglement_fidelity_kraus(rho, op), tol::recon);
    EXPECT_GE(a, -1e-12);
    EXPECT_LE(a, 1.0 + 1e-9);
  }
}

TEST(EnsembleAverageFidelity, IdentityAndBounds) {
  Rng rng = seeded(62);
  const Ensemble pure({{0.3, random_pure_state(2, rng).projector()}, {0.7, random_pure_state(2, rng).projector()}});
  EXPECT_NEAR(ensemble_average_fidelity(pure, QuantumOperation::identity(2)), 1.0, 1e-8);
  for (int trial = 0; trial < 50; ++trial) {
    const double f = ensemble_average_fidelity(pure, random_channel(2, 1 + rng() % 4, rng));
    EXPECT_GE(f, -1e-12);
    EXPECT_LE(f, 1.0 + 1e-9);
  }
}

TEST(MinFidelity, Examples) {
  EXPECT_NEAR(min_fidelity_estimate(QuantumOperation::identity(2)), 1.0, 1e-9);
  for (double f : {0.1, 0.4, 0.8}) {
    const double est = min_fidelity_estimate(QuantumOperation::depolarizing(f));
    EXPECT_NEAR(est, std::sqrt(1 - f / 2), 1e-9) << f;
  }
}

TEST(MinFidelity, PureStateFidelityClosedForm) {
  Rng rng = seeded(63);
  const auto dep = QuantumOperation::depolarizing(0.3);
  for (int i = 0; i < 20; ++i)
    EXPECT_NEAR(pure_state_fidelity(dep, random_pure_state(2, rng).amplitudes()), std::sqrt(1 - 0.15), 1e-10);
}

TEST(MinFidelity, UpperEstimateOfGridMinimum) {
  Rng rng = seeded(64);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_channel(2, 1 + rng() % 3, rng);
    // Dense Bloch-sphere grid oracle.
    double grid = 1.0;
    for (int a = 0; a <= 90; ++a)
      for (int b = 0; b < 180; ++b) {
        const double th = std::numbers::pi * a / 90.0, ph = 2 * std::numbers::pi * b / 180.0;
        ComplexVector v(2);
        v << std::cos(th / 2), std::polar(std::sin(th / 2), ph);
        grid = std::min(grid, pure_state_fidelity(op, v));
      }
    MinFidelityOptions few;
    few.samples = 16;
    MinFidelityOptions many;
    many.samples = 256;
    const double est_few = min_fidelity_estimate(op, few);
    const double est_many = min_fidelity_estimate(op, many);
    EXPECT_GE(est_many, grid - 1e-3);
    EXPECT_LE(est_many, est_few + 1e-15);
    EXPECT_NEAR(est_many, grid, 1e-2);
  }
}

TEST(Measurement, ProjectiveCanIncreaseEntropy) {
  Rng rng = seeded(65);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto rho = random_density_of_rank(d, 1 + rng() % d, rng);
    const ComplexMatrix p = random_projector(d, 1 + rng() % (d - 1), rng);
    const ComplexMatrix q = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) - p;
    const auto after = measure_nonselective(rho, MeasurementSet::from_operators({p, q}));
    EXPECT_GE(von_neumann_entropy(after), von_neumann_entropy(rho) - tol::recon);
  }
}

TEST(Measurement, GeneralMeasurementCanDecreaseEntropy) {
  ComplexMatrix m1 = ComplexMatrix::Zero(2, 2), m2 = ComplexMatrix::Zero(2, 2);
  m1(0, 0) = 1.0;
  m2(0, 1) = 1.0;
  const auto rho = DensityMatrix::maximally_mixed(2);
  const auto after = measure_nonselective(rho, MeasurementSet::from_operators({m1, m2}));
  EXPECT_NEAR(von_neumann_entropy(rho), 1.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(after), 0.0, 1e-10);
}

TEST(VonNeumannProperties, RandomizedSuite) {
  Rng rng = seeded(66);
  for (const auto& check : von_neumann_properties()) {
    double worst = kInfinity;
    for (int trial = 0; trial < 100; ++trial) worst = std::min(worst, check.margin(rng));
    EXPECT_GE(worst, -tol::recon) << check.name;
  }
}

TEST(VonNeumannProperties, StrictConcavityOnDistinctInputs) {
  const Ensemble e({{0.5, ket0()}, {0.5, DensityMatrix::basis_state(2, 1)}});
  EXPECT_GT(von_neumann_entropy(ensemble_state(e)), 0.5);
}
