// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>

#include "eacc/densim.hpp"

using namespace eacc;
using namespace eacc::densim;
using qsym::Owner;
using qsym::SlotId;

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// Weyl operators built straight from their definition on digit vectors.
Matrix shift(std::uint32_t dim, std::uint32_t x) {
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t j = 0; j < dim; ++j) m(qsym::weyl_add(dim, j, x), j) = 1.0;
  return m;
}

Matrix clock(std::uint32_t dim, std::uint32_t z) {
  const auto base = qsym::weyl_digits(dim).base;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t j = 0; j < dim; ++j)
    m(j, j) = std::polar(1.0, 2.0 * kPi * qsym::weyl_dot(dim, j, z) / base);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd phi(std::uint32_t dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim * dim);
  for (std::uint32_t j = 0; j < dim; ++j) v(j * dim + j) = 1.0 / std::sqrt(static_cast<double>(dim));
  return v;
}

double distance(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::shared_ptr<const qsym::SlotLayout> layout_of(std::uint32_t dim, int slots) {
  auto layout = std::make_shared<qsym::SlotLayout>();
  for (int s = 0; s < slots; ++s) layout->add("S" + std::to_string(s), dim, Owner::channel);
  return layout;
}

}  // namespace

TEST_CASE("qubit Bell projector matches the textbook matrix") {
  const auto rho = bell_projector(2, {0, 0});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  CHECK(distance(rho.matrix(), expected) < 1e-12);
  CHECK(rho.is_valid());
}

TEST_CASE("Bell projectors equal displaced maximally entangled states and resolve the identity") {
  for (std::uint32_t dim : {2u, 3u, 4u, 8u, 9u}) {
    CAPTURE(dim);
    Matrix sum = Matrix::Zero(dim * dim, dim * dim);
    for (std::uint32_t x = 0; x < dim; ++x)
      for (std::uint32_t z = 0; z < dim; ++z) {
        const Eigen::VectorXcd v = kron(shift(dim, x) * clock(dim, z), Matrix::Identity(dim, dim)) * phi(dim);
        const Matrix expected = v * v.adjoint();
        const auto rho = bell_projector(dim, {x, z});
        CHECK(distance(rho.matrix(), expected) < 1e-10);
        sum += rho.matrix();
      }
    CHECK(distance(sum, Matrix::Identity(dim * dim, dim * dim)) < 1e-9);
  }
}

TEST_CASE("displacing the second half equals the symbolic bookkeeping") {
  for (std::uint32_t dim : {2u, 3u, 4u, 9u}) {
    const auto layout = layout_of(dim, 2);
    for (std::uint32_t x = 0; x < dim; ++x)
      for (std::uint32_t z = 0; z < dim; ++z) {
        qsym::SymbolicState s(layout);
        s.make_bell_pair(0, 1);
        s.apply_displacement(1, x, z);
        const Eigen::VectorXcd v = kron(Matrix::Identity(dim, dim), shift(dim, x) * clock(dim, z)) * phi(dim);
        const std::vector<SlotId> subset{0, 1};
        CHECK(distance(to_density(s, subset).matrix(), v * v.adjoint()) < 1e-10);
      }
  }
}

TEST_CASE("subsystem order follows the subset order") {
  const auto layout = layout_of(3, 3);
  qsym::SymbolicState s(layout);
  s.set_classical(2, 1);
  s.make_bell_pair(0, 1);
  s.apply_displacement(0, 2, 1);
  const std::vector<SlotId> forward{0, 1, 2}, backward{2, 1, 0};
  const auto a = to_density(s, forward);
  const auto b = to_density(s, backward);
  const std::vector<std::size_t> perm{2, 1, 0};
  CHECK(distance(partial_trace(b, perm).matrix(), a.matrix()) < 1e-12);
  CHECK(a.is_valid());
}

TEST_CASE("partial traces and entropies of simple states") {
  const auto bell = bell_projector(4, {1, 3});
  const std::vector<std::size_t> first{0};
  const auto half = partial_trace(bell, first);
  CHECK(distance(half.matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-12);
  CHECK(vn_entropy(bell, 4) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vn_entropy(half, 4) == doctest::Approx(1.0));
  CHECK(vn_entropy(half, 2) == doctest::Approx(2.0));
  const auto mixed = DensityMatrix::maximally_mixed({2, 3});
  CHECK(vn_entropy(mixed, 6) == doctest::Approx(1.0));
  CHECK(vn_entropy(DensityMatrix::basis_projector(5, 3), 5) == doctest::Approx(0.0));
}

TEST_CASE("factor decomposition: loose halves, erasure and repeats") {
  const auto layout = layout_of(2, 4);
  qsym::SymbolicState s(layout);
  s.make_bell_pair(0, 1);
  s.make_bell_pair(2, 3);
  const std::vector<SlotId> cut{0, 2, 3};
  const auto factors = to_factors(s, cut);
  int loose = 0, pairs = 0;
  for (const auto& f : factors.factors) {
    loose += f.kind == FactorKind::loose;
    pairs += f.kind == FactorKind::pair;
  }
  CHECK(loose == 1);
  CHECK(pairs == 1);
  CHECK(vn_entropy(factors, 2) == doctest::Approx(1.0));
  CHECK(distance(assemble(factors).matrix(), assemble_serial(factors).matrix()) == 0.0);

  const std::vector<SlotId> repeated{0, 0};
  CHECK_THROWS_AS(to_factors(s, repeated), Error);
  const std::vector<SlotId> lost{1};
  s.erase(lost);
  const std::vector<SlotId> with_erased{0, 1};
  CHECK_THROWS_AS(to_factors(s, with_erased), Error);
  const std::vector<SlotId> survivor{0};
  CHECK(distance(to_density(s, survivor).matrix(), Matrix::Identity(2, 2) / 2.0) < 1e-12);
}

TEST_CASE("dimension cap") {
  const auto layout = layout_of(2, 13);
  qsym::SymbolicState s(layout);
  std::vector<SlotId> all;
  for (SlotId i = 0; i < 13; ++i) all.push_back(i);
  CHECK_THROWS_AS(to_density(s, all), Error);
  all.pop_back();
  CHECK(to_density(s, all).dim() == 4096);
}

TEST_CASE("classical-quantum quantities") {
  // Four orthogonal basis states of a ququart: one full dit of information.
  std::vector<DensityMatrix> states;
  for (std::uint32_t i = 0; i < 4; ++i) states.push_back(DensityMatrix::basis_projector(4, i));
  const auto ens = CqEnsemble::uniform({0, 1, 2, 3}, states);
  const auto q = cq_quantities(ens, 4);
  CHECK(q.h_avg == doctest::Approx(1.0));
  CHECK(q.h_cond == doctest::Approx(0.0));
  CHECK(q.holevo == doctest::Approx(1.0));
  CHECK(distance(ensemble_average(ens).matrix(), ensemble_average_serial(ens).matrix()) < 1e-15);
}

TEST_CASE("blockwise ensemble entropies agree with the dense route") {
  // Superdense-style ensemble on (Q0 B0 B1): Q0 displaced by the message,
  // B1's partner outside the subset.
  const auto layout = layout_of(2, 4);
  const std::vector<SlotId> subset{0, 1, 2};
  FactoredEnsemble factored;
  std::vector<DensityMatrix> dense;
  std::vector<std::uint64_t> labels;
  for (std::uint32_t m = 0; m < 4; ++m) {
    qsym::SymbolicState s(layout);
    s.make_bell_pair(0, 1);
    s.make_bell_pair(2, 3);
    s.apply_displacement(0, m & 1, m >> 1);
    factored.members.push_back(to_factors(s, subset));
    factored.weights.push_back(0.25);
    dense.push_back(to_density(s, subset));
    labels.push_back(m);
  }
  const auto reference = cq_quantities(CqEnsemble::uniform(labels, dense), 2);
  const auto blockwise = cq_quantities(factored, 2);
  const auto serial = cq_quantities_serial(factored, 2);
  CHECK(blockwise.h_avg == doctest::Approx(reference.h_avg));
  CHECK(blockwise.h_cond == doctest::Approx(reference.h_cond));
  CHECK(serial.h_avg == doctest::Approx(reference.h_avg));
  CHECK(reference.h_avg == doctest::Approx(3.0));
  CHECK(reference.h_cond == doctest::Approx(1.0));
}
