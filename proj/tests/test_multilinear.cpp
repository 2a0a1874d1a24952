// Multilinear structure maps. The signed-determinant formula over
// permutations increasing on two blocks is implemented here as the oracle
// and compared exhaustively against the iterated-contraction implementation.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gkoszul/multilinear.hpp"
#include "gkoszul/scenario.hpp"

using namespace gkoszul;

namespace {

using P = HomPoly<FpField>;

RingPtr<FpField> make_ring(const FpField& K, std::vector<int> weights,
                           std::vector<std::string> vars,
                           std::vector<std::string> relations = {}) {
  WeightSystem ws{weights};
  std::vector<P> rels;
  for (const auto& s : relations) rels.push_back(parse_poly(K, ws, vars, s));
  return std::make_shared<const WeightedRing<FpField>>(K, ws, vars, rels);
}

P constant(const FpField& K, const RingPtr<FpField>& ring, long long v) {
  P p(0);
  p.add_term(K, std::vector<int>(ring->n_vars(), 0), K.from_int(v));
  return p;
}

// x <- (u_1 ^ ... ^ u_p) on the basis element e_S by the determinant formula
// over permutations increasing on [1,p] and [p+1,k].
RawPolyMat<FpField> determinant_formula_oracle(const FpField& K, int n,
                                               const std::vector<std::vector<P>>& us, int q) {
  const int p = static_cast<int>(us.size());
  auto src = subsets(n, q);
  auto dst = subsets(n, q - p);
  std::map<std::vector<int>, int> dst_idx;
  for (int i = 0; i < static_cast<int>(dst.size()); ++i) dst_idx[dst[i]] = i;
  RawPolyMat<FpField> out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (int col = 0; col < static_cast<int>(src.size()); ++col) {
    const auto& s = src[col];
    for (const auto& a : subsets(q, p)) {
      // sigma = (positions a, then the rest, both increasing)
      std::vector<int> rest_pos;
      for (int t = 0; t < q; ++t)
        if (index_of(a, t) < 0) rest_pos.push_back(t);
      std::vector<int> perm = a;
      perm.insert(perm.end(), rest_pos.begin(), rest_pos.end());
      int eps = permutation_sign(perm);
      // det_{1<=i,j<=p} (u_j(y_{sigma(i)}))
      std::vector<std::vector<P>> mat(p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) mat[i].push_back(us[j][s[a[i]]]);
      auto d = p == 0 ? poly_one<FpField>(K, 1) : poly_determinant(K, mat);
      if (d.is_zero()) continue;
      std::vector<int> tail;
      for (int t : rest_pos) tail.push_back(s[t]);
      auto& cell = out.at(dst_idx.at(tail), col);
      auto signed_d = eps == 1 ? d : poly_neg(K, d);
      cell = cell.is_zero() && cell.terms().empty() ? signed_d : poly_add(K, cell, signed_d);
    }
  }
  return out;
}

bool raw_equal(const FpField& K, const RawPolyMat<FpField>& a, const RawPolyMat<FpField>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (!poly_eq(K, a.at(i, j), b.at(i, j))) return false;
  return true;
}

}  // namespace

TEST_CASE("power module bases and twists") {
  FpField K(32003);
  auto ring = make_ring(K, {1}, {"x"});
  SECTION("exterior") {
    FreeGradedModule<FpField> m(ring, {1, 2}, {"a", "b"});
    auto l0 = exterior_power(m, 0);
    REQUIRE(l0.rank() == 1);
    REQUIRE(l0.twists() == std::vector<int>{0});
    FreeGradedModule<FpField> m3(ring, {0, 0, 0}, {"a", "b", "c"});
    auto l2 = exterior_power(m3, 2);
    REQUIRE(l2.rank() == 3);
    REQUIRE(l2.labels() == std::vector<std::string>{"a^b", "a^c", "b^c"});
    auto top = exterior_power(m, 2);
    REQUIRE(top.rank() == 1);
    REQUIRE(top.twists() == std::vector<int>{3});
    REQUIRE(exterior_power(m, 3).rank() == 0);
  }
  SECTION("symmetric and divided") {
    FreeGradedModule<FpField> m(ring, {1, 1}, {"a", "b"});
    auto s1 = symmetric_power(m, 1);
    REQUIRE(s1.rank() == m.rank());
    REQUIRE(s1.twists() == m.twists());
    REQUIRE(symmetric_power(m, 2).rank() == 3);
    REQUIRE(divided_power(m, 2).rank() == 3);
    // D_p carries the same labels/twists as S_p of the dual, dualized
    REQUIRE(divided_power(m, 2).twists() == symmetric_power(m, 2).twists());
  }
  SECTION("graded dual is an involution") {
    FreeGradedModule<FpField> m(ring, {1, -2, 5}, {"a", "b", "c"});
    auto dd = graded_dual(graded_dual(m));
    REQUIRE(dd.twists() == m.twists());
    REQUIRE(dd.labels() == m.labels());
  }
}

TEST_CASE("single contraction on the named examples") {
  FpField K(32003);
  auto ring = make_ring(K, {1}, {"x"});
  FreeGradedModule<FpField> g2(ring, {0, 0}, {"g1", "g2"});
  std::vector<P> g1_star = {constant(K, ring, 1), constant(K, ring, 0)};
  std::vector<P> g2_star = {constant(K, ring, 0), constant(K, ring, 1)};
  SECTION("(g1^g2) <- g1* = g2") {
    auto c = single_contraction(g2, 2, g1_star);
    REQUIRE(c.target().rank() == 2);
    REQUIRE(poly_eq(K, c.entry(1, 0), constant(K, ring, 1)));
    REQUIRE(c.entry(0, 0).is_zero());
  }
  SECTION("(g1^g2) <- g2* = -g1") {
    auto c = single_contraction(g2, 2, g2_star);
    REQUIRE(poly_eq(K, c.entry(0, 0), constant(K, ring, -1)));
    REQUIRE(c.entry(1, 0).is_zero());
  }
  SECTION("(g1^g2^g3) <- g2* = -g1^g3") {
    FreeGradedModule<FpField> g3(ring, {0, 0, 0}, {"g1", "g2", "g3"});
    std::vector<P> u = {constant(K, ring, 0), constant(K, ring, 1), constant(K, ring, 0)};
    auto c = single_contraction(g3, 3, u);
    // target basis {g1^g2, g1^g3, g2^g3}; source is g1^g2^g3
    REQUIRE(poly_eq(K, c.entry(1, 0), constant(K, ring, -1)));
    REQUIRE(c.entry(0, 0).is_zero());
    REQUIRE(c.entry(2, 0).is_zero());
  }
  SECTION("zero functional gives the zero map") {
    std::vector<P> z = {P(0), P(0)};
    REQUIRE(single_contraction(g2, 2, z).is_zero());
  }
  SECTION("inhomogeneous functional throws") {
    auto xr = make_ring(K, {1, 1}, {"x", "y"});
    FreeGradedModule<FpField> m(xr, {0, 0}, {"a", "b"});
    std::vector<P> bad = {constant(K, xr, 1),
                          parse_poly(K, xr->weight_system(), xr->var_names(), "x")};
    REQUIRE_THROWS_AS(single_contraction(m, 2, bad), DegreeMismatch);
  }
}

TEST_CASE("full contraction: examples and the determinant-formula oracle") {
  FpField K(32003);
  auto ring = make_ring(K, {1}, {"x"});
  SECTION("identity pairing") {
    FreeGradedModule<FpField> g2(ring, {0, 0}, {"g1", "g2"});
    std::vector<std::vector<P>> us = {{constant(K, ring, 1), constant(K, ring, 0)},
                                      {constant(K, ring, 0), constant(K, ring, 1)}};
    auto c = full_contraction(g2, 2, us);
    REQUIRE(c.target().rank() == 1);
    REQUIRE(poly_eq(K, c.entry(0, 0), constant(K, ring, 1)));
  }
  SECTION("p = 0 is the identity") {
    FreeGradedModule<FpField> g3(ring, {0, 0, 0}, {"a", "b", "c"});
    auto c = full_contraction(g3, 2, {});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(poly_eq(K, c.entry(i, j), constant(K, ring, i == j ? 1 : 0)));
  }
  SECTION("(g1^g2^g3) <- (g1*^g3*) = -g2") {
    FreeGradedModule<FpField> g3(ring, {0, 0, 0}, {"g1", "g2", "g3"});
    std::vector<std::vector<P>> us = {
        {constant(K, ring, 1), constant(K, ring, 0), constant(K, ring, 0)},
        {constant(K, ring, 0), constant(K, ring, 0), constant(K, ring, 1)}};
    auto c = full_contraction(g3, 3, us);
    REQUIRE(poly_eq(K, c.entry(1, 0), constant(K, ring, -1)));
    REQUIRE(c.entry(0, 0).is_zero());
    REQUIRE(c.entry(2, 0).is_zero());
  }
  SECTION("iterated contraction equals the S_{n,p} determinant formula, exhaustively") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> val(1, 1000);
    for (int n = 1; n <= 5; ++n)
      for (int p = 0; p <= std::min(3, n); ++p)
        for (int q = p; q <= n; ++q) {
          std::vector<std::vector<P>> us(p, std::vector<P>(n));
          for (int a = 0; a < p; ++a)
            for (int i = 0; i < n; ++i) us[a][i] = constant(K, ring, val(rng));
          auto raw = raw_full_contraction(K, ring->n_vars(), n, us, q);
          auto oracle = determinant_formula_oracle(K, n, us, q);
          REQUIRE(raw_equal(K, raw, oracle));
        }
  }
  SECTION("the oracle agreement also holds with polynomial functionals") {
    auto pr = make_ring(K, {1, 1}, {"x", "y"});
    auto px = parse_poly(K, pr->weight_system(), pr->var_names(), "x");
    auto py = parse_poly(K, pr->weight_system(), pr->var_names(), "y");
    auto pxy = parse_poly(K, pr->weight_system(), pr->var_names(), "x+2*y");
    std::vector<std::vector<P>> us = {{px, py, pxy}, {py, px, px}};
    auto raw = raw_full_contraction(K, 2, 3, us, 3);
    auto oracle = determinant_formula_oracle(K, 3, us, 3);
    REQUIRE(raw_equal(K, raw, oracle));
  }
}

TEST_CASE("contraction anticommutation") {
  FpField K(32003);
  auto ring = make_ring(K, {1}, {"x"});
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> val(0, 32002);
  for (int n = 2; n <= 5; ++n) {
    FreeGradedModule<FpField> g(ring, std::vector<int>(n, 0), {});
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<P> u(n), v(n);
      for (int i = 0; i < n; ++i) {
        u[i] = constant(K, ring, val(rng));
        v[i] = constant(K, ring, val(rng));
      }
      for (int k = 2; k <= n; ++k) {
        auto cu = single_contraction(g, k, u);
        auto cv_then = single_contraction(g, k - 1, v);
        auto cv = single_contraction(g, k, v);
        auto cu_then = single_contraction(g, k - 1, u);
        auto ab = compose(cv_then, cu);
        auto ba = compose(cu_then, cv);
        REQUIRE(map_add(ab, ba).is_zero());
      }
    }
  }
}

TEST_CASE("koszul boundary") {
  FpField K(32003);
  auto ring = make_ring(K, {1, 1}, {"x", "y"});
  const auto& ws = ring->weight_system();
  const auto& vars = ring->var_names();
  FreeGradedModule<FpField> G(ring, {1, 1}, {"g1", "g2"});
  FreeGradedModule<FpField> Fm(ring, {0}, {"f1"});
  HomogeneousMap<FpField> psi(G, Fm, {parse_poly(K, ws, vars, "x"), parse_poly(K, ws, vars, "y")});
  SECTION("del(g1^g2 (x) 1) = x.g2 - y.g1 tensored with f1") {
    auto d = koszul_boundary(psi, 2, 0, KoszulSide::plain);
    REQUIRE(d.source().rank() == 1);
    REQUIRE(d.target().rank() == 2);
    REQUIRE(poly_eq(K, d.entry(1, 0), parse_poly(K, ws, vars, "x")));
    REQUIRE(poly_eq(K, d.entry(0, 0), parse_poly(K, ws, vars, "-1*y")));
  }
  SECTION("zero psi gives the zero map") {
    HomogeneousMap<FpField> z(G, Fm, {P(1), P(1)});
    REQUIRE(koszul_boundary(z, 2, 0, KoszulSide::plain).is_zero());
  }
  SECTION("del o del = 0 on Lambda^3 R^3 (x) S_0(F) for psi = (x,y,z)") {
    auto r3 = make_ring(K, {1, 1, 1}, {"x", "y", "z"});
    FreeGradedModule<FpField> G3(r3, {1, 1, 1}, {});
    FreeGradedModule<FpField> F1(r3, {0}, {});
    HomogeneousMap<FpField> p3(G3, F1,
                               {parse_poly(K, r3->weight_system(), r3->var_names(), "x"),
                                parse_poly(K, r3->weight_system(), r3->var_names(), "y"),
                                parse_poly(K, r3->weight_system(), r3->var_names(), "z")});
    auto d1 = koszul_boundary(p3, 3, 0, KoszulSide::plain);
    auto d2 = koszul_boundary(p3, 2, 1, KoszulSide::plain);
    REQUIRE(compose(d2, d1).is_zero());
    // dual side squares to zero as well
    auto e2 = koszul_boundary(p3, 3, 2, KoszulSide::dualized);
    auto e1 = koszul_boundary(p3, 2, 1, KoszulSide::dualized);
    REQUIRE(compose(e1, e2).is_zero());
  }
}

TEST_CASE("wedge boundary and splices on the cusp") {
  FpField K(32003);
  auto ring = make_ring(K, {2, 3}, {"x", "y"}, {"x^3+y^2"});
  const auto& ws = ring->weight_system();
  const auto& vars = ring->var_names();
  FreeGradedModule<FpField> G(ring, {-2, -3}, {"g1", "g2"});
  FreeGradedModule<FpField> Fm(ring, {-6}, {"f1"});
  FreeGradedModule<FpField> H(ring, {0}, {"h"});
  HomogeneousMap<FpField> psi(G, Fm,
                              {parse_poly(K, ws, vars, "3*x^2"), parse_poly(K, ws, vars, "2*y")});
  HomogeneousMap<FpField> phi(H, G,
                              {parse_poly(K, ws, vars, "2*x"), parse_poly(K, ws, vars, "3*y")});
  SECTION("d_phi(h^(2) (x) 1) = h^(1) (x) phi(h)") {
    auto d = wedge_boundary(phi, 2, 0, WedgeSide::divided);
    REQUIRE(d.source().rank() == 1);
    REQUIRE(d.target().rank() == 2);
    REQUIRE(poly_eq(K, d.entry(0, 0), parse_poly(K, ws, vars, "2*x")));
    REQUIRE(poly_eq(K, d.entry(1, 0), parse_poly(K, ws, vars, "3*y")));
  }
  SECTION("phi = 0 gives zero") {
    HomogeneousMap<FpField> z(H, G, {P(-2), P(-3)});
    REQUIRE(wedge_boundary(z, 1, 0, WedgeSide::divided).is_zero());
  }
  SECTION("d o d = 0 on D_2(H) (x) Lambda^0 G") {
    auto d1 = wedge_boundary(phi, 2, 0, WedgeSide::divided);
    auto d2 = wedge_boundary(phi, 1, 1, WedgeSide::divided);
    REQUIRE(compose(d2, d1).is_zero());
  }
  SECTION("nu_psi for m = 1 is the single contraction") {
    auto nu = splice_nu_psi(psi, 1);
    // Lambda^2 G -> Lambda^1 G: e12 -> 3x^2 g2 - 2y g1
    REQUIRE(poly_eq(K, nu.entry(1, 0), parse_poly(K, ws, vars, "3*x^2")));
    REQUIRE(poly_eq(K, nu.entry(0, 0), parse_poly(K, ws, vars, "-2*y")));
  }
  SECTION("nu^phi wedges in the euler vector") {
    auto nu = splice_nu_phi(phi, 0);
    REQUIRE(poly_eq(K, nu.entry(0, 0), parse_poly(K, ws, vars, "2*x")));
    REQUIRE(poly_eq(K, nu.entry(1, 0), parse_poly(K, ws, vars, "3*y")));
  }
  SECTION("m = 0 splice is the identity") {
    FreeGradedModule<FpField> F0(ring, {}, {});
    auto zero_psi = HomogeneousMap<FpField>::zero(G, F0);
    auto nu = splice_nu_psi(zero_psi, 1);
    REQUIRE(nu.source().rank() == 2);
    REQUIRE(nu.target().rank() == 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) REQUIRE(poly_eq(K, nu.entry(i, j), i == j
                                                                          ? poly_one<FpField>(K, 2)
                                                                          : P(0)));
  }
  SECTION("entry degree mismatch is rejected at construction") {
    REQUIRE_THROWS_AS(HomogeneousMap<FpField>(G, Fm,
                                              {parse_poly(K, ws, vars, "x"),
                                               parse_poly(K, ws, vars, "2*y")}),
                      DegreeMismatch);
  }
}
