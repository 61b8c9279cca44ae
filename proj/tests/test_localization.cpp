#include "gsp/graph.hpp"
#include "gsp/localization.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace gsp;
using gsp::test::max_abs;

namespace {

struct Draw {
  SpectralBasis<double> basis;
  VertexSet s;
  FrequencySet f;
  Projector<double> band;
  Projector<double> vertex;
};

Draw path3_draw(std::vector<Index> s, std::vector<Index> f) {
  Draw d;
  d.basis = eigendecompose(laplacian(test::path3()));
  d.s = VertexSet(3, std::move(s));
  d.f = FrequencySet(3, std::move(f));
  d.band = band_projector(d.basis, d.f);
  d.vertex = vertex_projector(3, d.s);
  return d;
}

Draw random_draw(std::mt19937_64 &rng, bool geometric) {
  Draw d;
  const Graph<double> g =
      geometric ? test::geometric(rng()) : test::random_weighted(rng, 6 + rng() % 14, 0.3);
  const Index n = g.size();
  d.basis = eigendecompose(laplacian(g));
  d.s = VertexSet(n, test::random_subset(rng, n, 1 + static_cast<Index>(rng() % (n - 1))));
  d.f = FrequencySet(n, test::random_subset(rng, n, 1 + static_cast<Index>(rng() % (n - 1))));
  d.band = band_projector(d.basis, d.f);
  d.vertex = vertex_projector(n, d.s);
  return d;
}

void check_slepian_invariants(const SlepianBasis<double> &sl, const Draw &d) {
  const Index n = sl.size();
  CHECK(max_abs(sl.vectors.transpose() * sl.vectors - Matrix<double>::Identity(n, n)) <= 1e-9);
  for (Index i = 0; i < n; ++i) {
    CHECK(sl.concentrations(i) >= 0.0);
    CHECK(sl.concentrations(i) <= 1.0);
    if (i > 0)
      CHECK(sl.concentrations(i) <= sl.concentrations(i - 1));
  }
  for (Index i = 0; i < n; ++i) {
    if (sl.concentrations(i) <= 1e-9)
      continue;
    CHECK((d.band.matrix * sl.vectors.col(i) - sl.vectors.col(i)).norm() <= 1e-8);
    for (Index j = 0; j < n; ++j) {
      if (sl.concentrations(j) <= 1e-9)
        continue;
      const double inner = sl.vectors.col(i).dot(d.vertex.matrix * sl.vectors.col(j));
      CHECK(std::abs(inner - (i == j ? sl.concentrations(j) : 0.0)) <= 1e-8);
    }
  }
}

} // namespace

TEST_SUITE_BEGIN("localization");

TEST_CASE("slepian basis: full vertex set reproduces the band") {
  std::mt19937_64 rng(1);
  const auto g = test::random_weighted(rng, 9, 0.4);
  const auto basis = eigendecompose(laplacian(g));
  const FrequencySet f(9, {0, 2, 5});
  const auto band = band_projector(basis, f);
  const auto sl = slepian_basis(band, vertex_projector(9, VertexSet::all(9)));
  for (Index i = 0; i < 9; ++i)
    CHECK(std::abs(sl.concentrations(i) - (i < 3 ? 1.0 : 0.0)) <= 1e-12);
  const Matrix<double> top = sl.vectors.leftCols(3);
  CHECK(max_abs(top * top.transpose() - band.matrix) <= 1e-12);
}

TEST_CASE("slepian basis: path-3 rank-one case") {
  const Draw d = path3_draw({1}, {0});
  // B D B = u0 u0^T e1 e1^T u0 u0^T = (1/3) u0 u0^T
  const Matrix<double> bdb = d.band.matrix * d.vertex.matrix * d.band.matrix;
  REQUIRE(max_abs(bdb - Matrix<double>::Constant(3, 3, 1.0 / 9.0)) <= 1e-15);
  const auto sl = slepian_basis(d.band, d.vertex);
  CHECK(std::abs(sl.concentrations(0) - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(sl.concentrations(1)) <= 1e-15);
  CHECK(std::abs(sl.concentrations(2)) <= 1e-15);
  CHECK(max_abs(sl.vectors.col(0) - Vector<double>::Ones(3) / std::sqrt(3.0)) <= 1e-15);
  CHECK(sl.vertex_set == d.s);
  CHECK(sl.frequency_set == d.f);
}

TEST_CASE("slepian basis: empty vertex set") {
  const auto basis = eigendecompose(laplacian(test::geometric(3)));
  const auto sl = slepian_basis(band_projector(basis, FrequencySet::first(5, 20)),
                                vertex_projector(20, VertexSet::none(20)));
  CHECK(sl.concentrations.isZero());
}

TEST_CASE("slepian basis rejects mismatched projectors") {
  const Draw d = path3_draw({1}, {0});
  CHECK_THROWS_AS(slepian_basis(d.vertex, d.band), InputError);
  CHECK_THROWS_AS(slepian_basis(d.vertex, d.vertex), InputError);
  const auto other = vertex_projector(4, VertexSet(4, {1}));
  CHECK_THROWS_AS(slepian_basis(d.band, other), InputError);
  CHECK_THROWS_AS(sigma_max(d.band, other), InputError);
}

TEST_CASE("slepian invariants on random draws") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Draw d = random_draw(rng, trial % 2 == 0);
    const auto sl = slepian_basis(d.band, d.vertex);
    check_slepian_invariants(sl, d);

    // lambda_i(BDB) = sigma_i^2(BD), full-matrix oracle
    Eigen::JacobiSVD<Matrix<double>> svd(d.band.matrix * d.vertex.matrix);
    const Vector<double> sv = svd.singularValues();
    for (Index i = 0; i < sl.size(); ++i)
      CHECK(std::abs(sl.concentrations(i) - sv(i) * sv(i)) <= 1e-9);
    const Vector<double> lam = test::bdb_eigenvalues_oracle(d.band.matrix, d.vertex.matrix);
    CHECK(max_abs(lam - sl.concentrations) <= 1e-9);
  }
}

TEST_CASE("concentrations grow with the vertex set") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = test::geometric(rng());
    const auto basis = eigendecompose(laplacian(g));
    const auto band = band_projector(basis, FrequencySet::first(1 + trial % 8, 20));
    auto members = test::random_subset(rng, 20, 12);
    const VertexSet big(20, members);
    members.resize(5 + trial % 6);
    const VertexSet small(20, members);
    const auto a = slepian_basis(band, vertex_projector(20, small));
    const auto b = slepian_basis(band, vertex_projector(20, big));
    for (Index i = 0; i < 20; ++i)
      CHECK(b.concentrations(i) >= a.concentrations(i) - 1e-12);
  }
}

TEST_CASE("sigma_max") {
  const auto basis = eigendecompose(laplacian(test::path3()));
  const auto I_b = band_projector(basis, FrequencySet::all(3));
  const auto I_v = vertex_projector(3, VertexSet::all(3));
  CHECK(std::abs(sigma_max(I_b, I_v) - 1.0) <= 1e-15);

  const Draw d = path3_draw({1}, {0});
  // ||u0 u0^T e1 e1^T||_2 = |u0(1)| = 1/sqrt(3)
  CHECK(std::abs(sigma_max(d.band, d.vertex) - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(sigma_max(d.band, vertex_projector(3, VertexSet::none(3))) == 0.0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Draw r = random_draw(rng, false);
    const double s = sigma_max(r.band, r.vertex);
    CHECK(std::abs(s - test::sigma_max_oracle(r.band.matrix, r.vertex.matrix)) <= 1e-12);
    // sqrt(lambda_max(Q P Q))
    const Matrix<double> qpq = r.vertex.matrix * r.band.matrix * r.vertex.matrix;
    Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(qpq, Eigen::EigenvaluesOnly);
    CHECK(std::abs(s - std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()))) <= 1e-7);
  }
}

TEST_CASE("perfect localization") {
  std::mt19937_64 rng(2);
  const auto g = test::random_weighted(rng, 7, 0.5);
  const auto basis = eigendecompose(laplacian(g));
  const auto full_band = band_projector(basis, FrequencySet::all(7));
  const auto vertex = vertex_projector(7, VertexSet(7, {0}));
  const auto yes = perfectly_localized_exists(full_band, vertex);
  CHECK(yes.exists);
  REQUIRE(yes.witness);
  CHECK(max_abs(*yes.witness - Vector<double>::Unit(7, 0)) <= 1e-12);

  const Draw d = path3_draw({1}, {0});
  const auto no = perfectly_localized_exists(d.band, d.vertex);
  CHECK_FALSE(no.exists);
  CHECK_FALSE(no.witness);
  CHECK(std::abs(no.top_concentration - 1.0 / 3.0) <= 1e-15);

  const Draw over = path3_draw({0, 1}, {0, 1});
  const auto hit = perfectly_localized_exists(over.band, over.vertex);
  CHECK(hit.top_concentration >= 1.0 - 1e-10);
  CHECK(hit.exists);
  REQUIRE(hit.witness);
  const double bound = std::sqrt(2.0 * 1e-8);
  CHECK((over.vertex.matrix * *hit.witness - *hit.witness).norm() <= bound);
  CHECK((over.band.matrix * *hit.witness - *hit.witness).norm() <= bound);

  CHECK_THROWS_AS(perfectly_localized_exists(d.band, d.vertex, 0.0), InputError);
}

TEST_CASE("perfect localization whenever |S| + |F| > n") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = test::random_weighted(rng, 5 + trial % 12, 0.4);
    const Index n = g.size();
    const auto basis = eigendecompose(laplacian(g));
    const Index ks = 1 + static_cast<Index>(rng() % n);
    const Index kf = n + 1 - ks + static_cast<Index>(rng() % ks);
    const VertexSet s(n, test::random_subset(rng, n, ks));
    const FrequencySet f(n, test::random_subset(rng, n, std::min(kf, n)));
    REQUIRE(s.size() + f.size() > n);
    const auto band = band_projector(basis, f);
    const auto vertex = vertex_projector(n, s);
    const auto r = perfectly_localized_exists(band, vertex);
    CHECK(r.exists);
    REQUIRE(r.witness);
    CHECK((vertex.matrix * *r.witness - *r.witness).norm() <= std::sqrt(2e-8));
    CHECK((band.matrix * *r.witness - *r.witness).norm() <= std::sqrt(2e-8));
  }
}

TEST_CASE("uncertainty profile") {
  const auto basis = eigendecompose(laplacian(test::path3()));
  const auto all_s = uncertainty_profile(basis, VertexSet::all(3), FrequencySet(3, {0, 2}));
  CHECK(std::abs(all_s.s_bd - 1.0) <= 1e-15);
  CHECK(all_s.s_bdc == 0.0);

  const auto p = uncertainty_profile(basis, VertexSet(3, {1}), FrequencySet(3, {0}));
  CHECK(std::abs(p.s_bd - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(std::abs(p.s_bdc - std::sqrt(2.0 / 3.0)) <= 1e-15);
  // Bbar projects onto span{u1, u2}; ||Bbar e1|| = sqrt(1 - 1/3)
  CHECK(std::abs(p.s_bcd - std::sqrt(2.0 / 3.0)) <= 1e-15);
  // span{e0, e2} and span{u1, u2} intersect in R^3
  CHECK(std::abs(p.s_bcdc - 1.0) <= 1e-15);

  const auto full_f = uncertainty_profile(basis, VertexSet(3, {0, 2}), FrequencySet::all(3));
  CHECK(std::abs(full_f.s_bd - 1.0) <= 1e-15);
  CHECK(full_f.s_bcd == 0.0);
}

TEST_CASE("region membership") {
  const auto basis = eigendecompose(laplacian(test::path3()));
  const auto p = uncertainty_profile(basis, VertexSet(3, {1}), FrequencySet(3, {0}));
  CHECK_FALSE(region_contains(p, {1.0, 1.0}));
  CHECK(region_contains(p, {p.s_bd, 1.0}));
  const auto slack = region_slack(p, {p.s_bd, 1.0});
  CHECK(std::abs(slack[0]) <= 1e-12);
  for (double s : slack)
    CHECK(s >= -1e-12);

  UncertaintyProfile<double> q{0.5, 0.5, 0.5, 0.5};
  CHECK_FALSE(region_contains(q, {0.0, 0.0}));
  CHECK(region_slack(q, {0.0, 0.0})[3] < 0.0);
}

TEST_CASE("boundary curve") {
  UncertaintyProfile<double> p{0.6, 0.5, 0.5, 0.5};
  CHECK(std::abs(boundary_beta(p, 1.0) - 0.6) <= 1e-15);
  CHECK(boundary_beta(p, 0.6) == 1.0);
  CHECK(boundary_beta(p, 0.2) == 1.0);
  for (double alpha = 0.6; alpha <= 1.0; alpha += 0.01) {
    const double beta = boundary_beta(p, alpha);
    CHECK(std::abs(std::acos(alpha) + std::acos(beta) - std::acos(0.6)) <= 1e-10);
  }
  CHECK_THROWS_AS(boundary_beta(p, 1.5), InputError);
  CHECK_THROWS_AS(boundary_beta(p, -0.1), InputError);

  const double s = 1.0 / std::sqrt(3.0);
  const double sym = std::sqrt((1.0 + s) / 2.0);
  CHECK(std::abs(sym - 0.88807383397711525) <= 1e-15);
  UncertaintyProfile<double> path{s, 0, 0, 0};
  CHECK(std::abs(boundary_beta(path, sym) - sym) <= 1e-12);

  const auto corners = region_boundary(UncertaintyProfile<double>{1.0, 0.3, 0.3, 0.3}, 0.4);
  CHECK(corners.upper_right == 1.0);
  UncertaintyProfile<double> rounded{1.0 - 2e-16, 0, 0, 0};
  CHECK(boundary_beta(rounded, 1.0) == 1.0);
}

TEST_CASE("maximally concentrated vector") {
  const Draw d = path3_draw({1}, {0});
  const auto sl = slepian_basis(d.band, d.vertex);
  const Vector<double> f = max_concentration_vector(sl, d.vertex);
  const double target = std::sqrt((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);
  CHECK(std::abs(f.norm() - 1.0) <= 1e-10);
  CHECK(std::abs((d.vertex.matrix * f).norm() - target) <= 1e-8);
  CHECK(std::abs((d.band.matrix * f).norm() - target) <= 1e-8);

  // perfect localization: f' collapses onto psi_1
  const Draw over = path3_draw({0, 1}, {0, 1});
  const auto slo = slepian_basis(over.band, over.vertex);
  const Vector<double> fo = max_concentration_vector(slo, over.vertex);
  CHECK((fo - slo.vectors.col(0)).norm() <= 1e-7);
  CHECK(std::abs((over.vertex.matrix * fo).norm() - 1.0) <= 1e-8);
  CHECK(std::abs((over.band.matrix * fo).norm() - 1.0) <= 1e-8);

  const auto zero = slepian_basis(d.band, vertex_projector(3, VertexSet::none(3)));
  CHECK_THROWS_AS(max_concentration_vector(zero, vertex_projector(3, VertexSet::none(3))),
                  NumericalError);
}

TEST_CASE("region is a sound outer bound and its corner is attained") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const Draw d = random_draw(rng, true);
    const auto profile = uncertainty_profile(d.band, d.vertex);
    for (int k = 0; k < 200; ++k) {
      Vector<double> f = test::random_vector(rng, d.basis.size());
      f.normalize();
      const UncertaintyPoint<double> pt{(d.vertex.matrix * f).norm(), (d.band.matrix * f).norm()};
      CHECK(region_contains(profile, pt));
    }
    const auto sl = slepian_basis(d.band, d.vertex);
    if (sl.concentrations(0) <= 1e-12)
      continue;
    const Vector<double> f = max_concentration_vector(sl, d.vertex);
    const UncertaintyPoint<double> pt{(d.vertex.matrix * f).norm(), (d.band.matrix * f).norm()};
    const auto slack = region_slack(profile, pt);
    CHECK(std::abs(slack[0]) <= 1e-8);
    for (double s : slack)
      CHECK(s >= -1e-8);
  }
}

TEST_SUITE_END();
