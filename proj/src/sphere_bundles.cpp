// SPDX-License-Identifier: Apache-2.0
#include "cuntz/sphere_bundles.hpp"

#include <algorithm>
#include <cmath>

#include "cuntz/distances.hpp"
#include "cuntz/error.hpp"
#include "cuntz/functions.hpp"

namespace cuntz {

ProjectionField::ProjectionField(MatrixField p, double tol) : field_(std::move(p)) {
  if (field_.size() == 0) throw InvalidInput("projection field: empty mesh");
  for (int x = 0; x < field_.size(); ++x) {
    const Matrix& m = field_.sample(x).matrix();
    const double err = operator_norm(Matrix(m * m - m));
    if (err > tol)
      throw InvalidInput("projection field: |P^2 - P| = " + std::to_string(err) + " at point " + std::to_string(x));
    const auto& ev = field_.sample(x).eigenvalues();
    const int r = int(std::count_if(ev.begin(), ev.end(), [](double v) { return v > 0.5; }));
    if (x == 0) rank_ = r;
    else if (r != rank_) throw InvalidInput("projection field: rank changes at point " + std::to_string(x));
  }
}

std::vector<Matrix> ProjectionField::frames() const {
  std::vector<Matrix> f;
  f.reserve(std::size_t(field_.size()));
  for (const auto& s : field_.samples()) f.push_back(s.frame().leftCols(rank_));
  return f;
}

const ChernEstimate& ProjectionField::chern() const {
  if (!*chern_) *chern_ = chern_from_frames(space(), frames());
  return **chern_;
}

ProjectionField bott_projection(const SpacePtr& sphere, int k) {
  if (sphere->kind() != SpaceKind::Sphere) throw InvalidInput("bott_projection: base space must be the sphere");
  const std::complex<double> i1(0, 1);
  return ProjectionField(build_field(sphere, 2, [k, i1](const MeshPoint& p) {
    Matrix m(2, 2);
    if (k == 0) {
      m << 1, 0, 0, 0;
      return m;
    }
    const double x = p.coords(0), y = p.coords(1), z = p.coords(2);
    const double s = std::hypot(x, y);
    const double phi = std::atan2(y, x);
    const double n1 = s * std::cos(k * phi), n2 = s * std::sin(k * phi);
    m(0, 0) = 0.5 * (1 + z);
    m(1, 1) = 0.5 * (1 - z);
    m(0, 1) = 0.5 * (n1 - i1 * n2);
    m(1, 0) = 0.5 * (n1 + i1 * n2);
    return m;
  }));
}

int chern_number(const ProjectionField& p) { return p.chern().value; }

ProjectionField direct_sum(const ProjectionField& p, const ProjectionField& q) {
  if (!p.space().same_as(q.space())) throw InvalidInput("direct_sum: different spaces");
  const int n = p.n() + q.n();
  std::vector<PositiveMatrix> s;
  for (int x = 0; x < p.field().size(); ++x) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(p.n(), p.n()) = p.field().sample(x).matrix();
    m.bottomRightCorner(q.n(), q.n()) = q.field().sample(x).matrix();
    s.emplace_back(m);
  }
  return ProjectionField(MatrixField(p.field().space_ptr(), n, std::move(s)));
}

ProjectionField complement(const ProjectionField& p) {
  std::vector<PositiveMatrix> s;
  for (const auto& m : p.field().samples()) s.emplace_back(Matrix(Matrix::Identity(p.n(), p.n()) - m.matrix()));
  return ProjectionField(MatrixField(p.field().space_ptr(), p.n(), std::move(s)));
}

namespace {

MatrixField two_level_field(const ProjectionField& p, const std::vector<double>& l1, const std::vector<double>& l2) {
  std::vector<PositiveMatrix> s;
  for (int x = 0; x < p.field().size(); ++x) {
    Eigen::VectorXd v(2);
    v << l1[std::size_t(x)], l2[std::size_t(x)];
    s.push_back(PositiveMatrix::from_spectrum(v, p.field().sample(x).frame()));
  }
  return MatrixField(p.field().space_ptr(), 2, std::move(s));
}

}  // namespace

SpherePair build_sphere_pair(const SpacePtr& sphere, const ScalarField& lambda1, const ScalarField& lambda2, int k) {
  if (sphere->kind() != SpaceKind::Sphere) throw InvalidInput("sphere pair: base space must be the sphere");
  if (k == 0) throw InvalidInput("sphere pair: k must be nonzero (k = 0 makes P trivial)");
  SpherePair pair;
  pair.k = k;
  for (const auto& p : sphere->points()) {
    pair.lambda1.push_back(lambda1(p));
    pair.lambda2.push_back(lambda2(p));
  }
  const auto& l1 = pair.lambda1;
  const auto& l2 = pair.lambda2;
  constexpr double tol = 1e-12;
  for (std::size_t x = 0; x < l1.size(); ++x) {
    if (!(l1[x] > l2[x])) throw InvalidInput("sphere pair: lambda1 > lambda2 fails at point " + std::to_string(x));
    if (!(l2[x] >= -tol)) throw InvalidInput("sphere pair: lambda2 < 0 at point " + std::to_string(x));
    if (!(l1[x] <= 1 + tol)) throw InvalidInput("sphere pair: lambda1 > 1 at point " + std::to_string(x));
  }
  const double min1 = *std::min_element(l1.begin(), l1.end());
  const double min2 = *std::min_element(l2.begin(), l2.end());
  const double max2 = *std::max_element(l2.begin(), l2.end());
  if (std::abs(min2) > tol) throw InvalidInput("sphere pair: min lambda2 = " + std::to_string(min2) + ", must be 0");
  if (min1 > max2 + tol)
    throw InvalidInput("sphere pair: min lambda1 = " + std::to_string(min1) + " exceeds max lambda2 = " +
                       std::to_string(max2));
  for (auto& v : pair.lambda2) v = std::max(v, 0.0);
  pair.a = two_level_field(bott_projection(sphere, k), pair.lambda1, pair.lambda2);
  pair.b = two_level_field(bott_projection(sphere, 0), pair.lambda1, pair.lambda2);
  return pair;
}

SpherePair canonical_sphere_pair(const SpacePtr& sphere, int k) {
  return build_sphere_pair(
      sphere, [](const MeshPoint& p) { return (3 + p.coords(2)) / 4; },
      [](const MeshPoint& p) { return std::max(0.0, (1 + p.coords(2)) / 4); }, k);
}

std::pair<MatrixField, MatrixField> normalized_pair(const SpherePair& pair) {
  auto scale = [&](const MatrixField& f) {
    return map_samples(f, [&](const PositiveMatrix& m, int x) {
      const double l = pair.lambda1[std::size_t(x)];
      return apply_spectral(m, [l](double v) { return v / l; });
    });
  };
  return {scale(pair.a), scale(pair.b)};
}

SpherePair conjugate_b(const SpherePair& pair, const std::vector<Matrix>& u) {
  SpherePair out = pair;
  out.b = conjugate_by_unitary_field(pair.b, u);
  return out;
}

namespace {

std::vector<int> ranks_of(const MatrixField& f) { return rank_field(f, 0).ranks; }

bool constant(const std::vector<int>& r) {
  return std::all_of(r.begin(), r.end(), [&](int v) { return v == r.front(); });
}

template <class F>
SphereFunctionCheck check_function(const std::string& name, const SpherePair& pair, F f) {
  SphereFunctionCheck c;
  c.function = name;
  const MatrixField fa = functional_calculus_field(pair.a, f);
  const MatrixField fb = functional_calculus_field(pair.b, f);
  const auto ra = ranks_of(fa), rb = ranks_of(fb);
  c.ranks_equal = ra == rb;
  c.nonconstant = !constant(ra);
  const bool zero = std::all_of(ra.begin(), ra.end(), [](int v) { return v == 0; });
  c.certified = cuntz_compare(fa, fb).holds == Holds::Yes && cuntz_compare(fb, fa).holds == Holds::Yes &&
                c.ranks_equal && (c.nonconstant || zero);
  return c;
}

}  // namespace

SphereReport verify_sphere_counterexample(const SpherePair& pair, const SphereVerifyOptions& options) {
  if (options.t_grid < 2) throw InvalidInput("sphere report: t grid needs at least 2 points");
  for (const MatrixField* f : {&pair.a, &pair.b})
    if (!SpectralField(*f, options.dw_step, kRankTolerance).chern_top(1))
      throw MeshTooCoarse("sphere report: Chern number of the top eigenbundle is not resolved on " +
                          std::to_string(f->space().size()) + " vertices");
  SphereReport rep;
  const int T = options.t_grid;
  const double dt = 1.0 / T;

  // (1) functional calculus images f(a), f(b)
  for (int j = 0; j < T; ++j)
    rep.functions.push_back(check_function("e_" + std::to_string(j * dt), pair, CutFunction{j * dt}));
  for (double e : options.eps) rep.functions.push_back(check_function("g_" + std::to_string(e), pair, GEpsilon{e}));
  rep.functions.push_back(check_function("id", pair, IdentityFunction{}));
  rep.clause1 = std::all_of(rep.functions.begin(), rep.functions.end(), [](const auto& c) { return c.certified; });
  if (!rep.clause1)
    for (const auto& c : rep.functions)
      if (!c.certified) {
        rep.witness = "clause 1 fails for " + c.function;
        break;
      }

  // (2) induced paths t -> [e_t(a)], [e_t(b)] as rank fields
  MorphismPath<std::vector<int>> pa, pb;
  for (int j = 0; j < T; ++j) {
    const double t = j * dt;
    pa.grid.push_back(t);
    pb.grid.push_back(t);
    pa.images.push_back(rank_field(pair.a, t).ranks);
    pb.images.push_back(rank_field(pair.b, t).ranks);
  }
  rep.path_dw = dw_morphisms(pa, pb);
  rep.clause2 = rep.path_dw.lo == 0 && std::abs(rep.path_dw.hi - rep.path_dw.resolution) < 1e-12;
  if (!rep.clause2 && rep.witness.empty()) rep.witness = "clause 2: path distance hi = " + std::to_string(rep.path_dw.hi);

  // (3) lower bound on the normalized pair
  for (std::size_t x = 0; x < pair.lambda1.size(); ++x)
    rep.ratio_max = std::max(rep.ratio_max, pair.lambda2[x] / pair.lambda1[x]);
  const auto [na, nb] = normalized_pair(pair);
  DwOptions o;
  o.step = options.dw_step;
  const DwResult dw = dw_elements(na, nb, o);
  rep.normalized_dw = dw.interval;
  rep.bound = dw.interval.lo;
  rep.required = 1 - rep.ratio_max - dw.interval.resolution;
  rep.clause3 = rep.bound >= rep.required - 1e-12;
  if (!rep.clause3 && rep.witness.empty())
    rep.witness = "clause 3: bound " + std::to_string(rep.bound) + " < " + std::to_string(rep.required);
  else if (rep.clause3 && rep.witness.empty() && !dw.witnesses.empty())
    rep.witness = "t = " + std::to_string(dw.witnesses.front().t) + ", r = " + std::to_string(dw.witnesses.front().r) +
                  ": " + to_string(dw.witnesses.front().reason) + " (" + dw.witnesses.front().detail + ")";
  return rep;
}

}  // namespace cuntz
