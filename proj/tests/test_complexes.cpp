// Complex factory: the generalized Koszul families, the bicomplex grid with
// its sign assignment, the kernel row, the cokernel complexes and their
// validation, checked against hand computations and brute-force oracles.

#include <catch2/catch_amalgamated.hpp>

#include "gkoszul/gkoszul.hpp"

using namespace gkoszul;

namespace {

using P = HomPoly<FpField>;

struct CuspData {
  RingPtr<FpField> ring;
  HomogeneousMap<FpField> psi, phi, chi, lambda;
};

CuspData cusp(const FpField& K) {
  WeightSystem ws{{2, 3}};
  std::vector<std::string> vars{"x", "y"};
  std::vector<P> rels = {parse_poly(K, ws, vars, "x^3+y^2")};
  auto ring = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, rels);
  FreeGradedModule<FpField> G(ring, {-2, -3}, {"g1", "g2"});
  FreeGradedModule<FpField> Fm(ring, {-6}, {"f1"});
  FreeGradedModule<FpField> H(ring, {0}, {"h"});
  HomogeneousMap<FpField> psi(G, Fm,
                              {parse_poly(K, ws, vars, "3*x^2"), parse_poly(K, ws, vars, "2*y")});
  HomogeneousMap<FpField> phi(H, G,
                              {parse_poly(K, ws, vars, "2*x"), parse_poly(K, ws, vars, "3*y")});
  // chi and lambda in the unstarred world
  FreeGradedModule<FpField> Fs(ring, {6}, {"F1"});
  FreeGradedModule<FpField> Gs(ring, {2, 3}, {"dx", "dy"});
  FreeGradedModule<FpField> Hs(ring, {0}, {"H1"});
  HomogeneousMap<FpField> chi(Fs, Gs,
                              {parse_poly(K, ws, vars, "3*x^2"), parse_poly(K, ws, vars, "2*y")});
  HomogeneousMap<FpField> lambda(
      Gs, Hs, {parse_poly(K, ws, vars, "2*x"), parse_poly(K, ws, vars, "3*y")});
  return {ring, psi, phi, chi, lambda};
}

HomogeneousMap<FpField> classical_koszul_psi(const FpField& K, RingPtr<FpField>& ring_out) {
  WeightSystem ws{{1, 1, 1}};
  std::vector<std::string> vars{"x", "y", "z"};
  auto ring = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, std::vector<P>{});
  ring_out = ring;
  FreeGradedModule<FpField> G(ring, {1, 1, 1}, {"g1", "g2", "g3"});
  FreeGradedModule<FpField> Fm(ring, {0}, {"f1"});
  return HomogeneousMap<FpField>(G, Fm,
                                 {parse_poly(K, ws, vars, "x"), parse_poly(K, ws, vars, "y"),
                                  parse_poly(K, ws, vars, "z")});
}

}  // namespace

TEST_CASE("C_psi(t) for the classical Koszul control") {
  FpField K(32003);
  RingPtr<FpField> ring;
  auto psi = classical_koszul_psi(K, ring);
  Engine<FpField> eng(ring, EngineOptions{8, 0, 1});
  SECTION("t = 0 resolves R/(x,y,z)") {
    auto cx = build_C_psi(psi, 0);
    REQUIRE(cx.first_position() == 0);
    REQUIRE(cx.last_position() == 3);
    REQUIRE(eng.validate_complex(cx).ok);
    for (int i = 0; i < 3; ++i) {
      auto t = eng.length(cx, i);
      REQUIRE(t.total == 0);
      REQUIRE(t.resolved());
    }
    auto top = eng.length(cx, 3);
    REQUIRE(top.total == 1);
    REQUIRE(top.termination == Termination::proved);  // end cokernel window is sound
  }
  SECTION("t above the rank leaves only the plain strand") {
    auto cx = build_C_psi(psi, 4);
    REQUIRE(cx.first_position() == 0);
    // terms Lambda^{4-p} G (x) S_p(F), p = 1..4
    REQUIRE(cx.last_position() == 3);
    REQUIRE(eng.validate_complex(cx).ok);
  }
  SECTION("negative t keeps only the dual strand") {
    auto cx = build_C_psi(psi, -1);
    REQUIRE(cx.first_position() == 0);
    REQUIRE(eng.validate_complex(cx).ok);
    // ends at Lambda^{m-1} G (x) S_0(F)^* = Lambda^0
    REQUIRE(cx.term(cx.last_position()).ambient().rank() == 1);
  }
  SECTION("unit entry psi gives split exact complexes") {
    WeightSystem ws{{1, 1}};
    std::vector<std::string> vars{"x", "y"};
    auto r2 = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, std::vector<P>{});
    FreeGradedModule<FpField> G(r2, {0, 1, 1}, {});
    FreeGradedModule<FpField> Fm(r2, {0}, {});
    HomogeneousMap<FpField> unit_psi(
        G, Fm, {poly_one<FpField>(K, 2), parse_poly(K, ws, vars, "x"),
                parse_poly(K, ws, vars, "y")});
    Engine<FpField> e2(r2, EngineOptions{6, 0, 1});
    for (int t = 0; t <= 2; ++t) {
      auto cx = build_C_psi(unit_psi, t);
      for (int i = cx.first_position(); i <= cx.last_position(); ++i)
        REQUIRE(e2.length(cx, i).total == 0);
    }
  }
}

TEST_CASE("D_phi(t) families") {
  FpField K(32003);
  auto c = cusp(K);
  Engine<FpField> eng(c.ring, EngineOptions{17, 0, 1});
  SECTION("cusp euler at t = 0 is the Koszul cochain complex on (2x, 3y)") {
    auto cx = build_D_phi(c.phi, 0);
    // 0 -> R -> Lambda^1 G -> Lambda^2 G -> 0 up to label identification
    REQUIRE(cx.first_position() == 0);
    REQUIRE(cx.last_position() == 2);
    REQUIRE(cx.term(0).ambient().rank() == 1);
    REQUIRE(cx.term(1).ambient().rank() == 2);
    REQUIRE(cx.term(2).ambient().rank() == 1);
    REQUIRE(eng.validate_complex(cx).ok);
    // H^0 = 0 (phi injective), H^2 = k in the right degree
    REQUIRE(eng.length(cx, 0).total == 0);
  }
  SECTION("phi = 0 gives zero differentials") {
    FreeGradedModule<FpField> H(c.ring, {0}, {"h"});
    HomogeneousMap<FpField> z(H, c.psi.source(), {P(-2), P(-3)});
    auto cx = build_D_phi(z, 1);
    for (int i = cx.first_position(); i < cx.last_position(); ++i)
      REQUIRE(cx.differential(i).ambient_map.is_zero());
  }
  SECTION("d o d = 0 at t = 2") {
    auto cx = build_D_phi(c.phi, 2);
    REQUIRE(eng.validate_complex(cx).ok);
  }
}

TEST_CASE("bicomplex grid validation") {
  FpField K(32003);
  auto c = cusp(K);
  SECTION("cusp: every square anticommutes, rows and columns square to zero") {
    for (int t = 0; t <= 1; ++t) {
      auto bicx = build_bicomplex(c.psi, c.phi, t);
      auto diag = validate_bicomplex(bicx);
      CAPTURE(t, diag.failures);
      REQUIRE(diag.ok);
    }
  }
  SECTION("phi = 0 anticommutes trivially") {
    FreeGradedModule<FpField> H(c.ring, {0}, {"h"});
    HomogeneousMap<FpField> z(H, c.psi.source(), {P(-2), P(-3)});
    auto bicx = build_bicomplex(c.psi, z, 0);
    REQUIRE(validate_bicomplex(bicx).ok);
  }
  SECTION("a corrupted sign is caught") {
    Bicomplex<FpField> bicx(make_pair_checked(c.psi, c.phi), 0, -3, 3, -2, 3);
    bool found_failure = false;
    for (int Pc = bicx.pmin(); Pc < bicx.pmax() && !found_failure; ++Pc)
      for (int Qc = bicx.qmin(); Qc < bicx.qmax() && !found_failure; ++Qc) {
        // flip the sign of the vertical leg at (Pc,Qc) and retest its square
        auto v = bicx.vertical(Pc, Qc).scaled(-1);
        auto down_right = compose(bicx.horizontal(Pc, Qc + 1), v);
        auto right_down = compose(bicx.vertical(Pc + 1, Qc), bicx.horizontal(Pc, Qc));
        if (!map_is_zero_mod(map_add(down_right, right_down))) found_failure = true;
      }
    REQUIRE(found_failure);
  }
  SECTION("psi o phi != 0 is rejected upstream") {
    RingPtr<FpField> r3;
    auto psi = classical_koszul_psi(K, r3);
    FreeGradedModule<FpField> H(r3, {2}, {"h"});
    // phi = (x, 0, 0): psi o phi = x^2 != 0
    HomogeneousMap<FpField> bad(H, psi.source(),
                                {parse_poly(K, r3->weight_system(), r3->var_names(), "x"),
                                 P(1), P(1)});
    REQUIRE_THROWS_AS(build_bicomplex(psi, bad, 0), CompositionNonzero);
  }
  SECTION("fermat3 single-cell hand check") {
    WeightSystem ws{{1, 1, 1}};
    std::vector<std::string> vars{"x", "y", "z"};
    std::vector<P> rels = {parse_poly(K, ws, vars, "x^3+y^3+z^3")};
    auto ring = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, rels);
    FreeGradedModule<FpField> G(ring, {-1, -1, -1}, {"g1", "g2", "g3"});
    FreeGradedModule<FpField> Fm(ring, {-3}, {"f"});
    FreeGradedModule<FpField> H(ring, {0}, {"h"});
    HomogeneousMap<FpField> psi(G, Fm,
                                {parse_poly(K, ws, vars, "3*x^2"),
                                 parse_poly(K, ws, vars, "3*y^2"),
                                 parse_poly(K, ws, vars, "3*z^2")});
    HomogeneousMap<FpField> phi(H, G,
                                {parse_poly(K, ws, vars, "x"), parse_poly(K, ws, vars, "y"),
                                 parse_poly(K, ws, vars, "z")});
    auto bicx = build_bicomplex(psi, phi, 1);
    REQUIRE(validate_bicomplex(Bicomplex<FpField>(make_pair_checked(psi, phi), 1, -3, 4, -2, 4))
                .ok);
    // hand-assembled horizontal at (-1, 1): D_1(H) (x) Lambda^0 G -> Lambda^1 G
    auto h = bicx.horizontal(-1, 1);
    REQUIRE(h.source().rank() == 1);
    REQUIRE(h.target().rank() == 3);
    REQUIRE(poly_eq(K, h.entry(0, 0), parse_poly(K, ws, vars, "x")));
    REQUIRE(poly_eq(K, h.entry(1, 0), parse_poly(K, ws, vars, "y")));
    REQUIRE(poly_eq(K, h.entry(2, 0), parse_poly(K, ws, vars, "z")));
  }
}

TEST_CASE("kernel row N(t) on the cusp") {
  FpField K(32003);
  auto c = cusp(K);
  Engine<FpField> eng(c.ring, EngineOptions{17, 3, 1});
  SECTION("Hbar^0(N(1)) = 0 (first clause of the theorem, h = 1)") {
    auto bicx = build_bicomplex(c.psi, c.phi, 1);
    auto t = eng.n_homology_table(bicx, 901, 0);
    REQUIRE(t.total == 0);
    REQUIRE(t.resolved());
  }
  SECTION("Hbar^1(N(0)) = k, the length-one module of the r = 1 analysis") {
    auto bicx = build_bicomplex(c.psi, c.phi, 0);
    auto t = eng.n_homology_table(bicx, 902, 1);
    REQUIRE(t.total == 1);
  }
  SECTION("negative-degree slice of N^0 vanishes") {
    auto bicx = build_bicomplex(c.psi, c.phi, 0);
    REQUIRE(eng.n_slice_basis(bicx, 903, 0, -1).cols() == 0);
  }
  SECTION("split case: N(t) exact where computed") {
    WeightSystem ws{{1, 1}};
    std::vector<std::string> vars{"x", "y"};
    auto r2 = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, std::vector<P>{});
    FreeGradedModule<FpField> G(r2, {0, 1, 1}, {});
    FreeGradedModule<FpField> Fm(r2, {0}, {});
    HomogeneousMap<FpField> unit_psi(G, Fm,
                                     {poly_one<FpField>(K, 2),
                                      parse_poly(K, ws, vars, "x"),
                                      parse_poly(K, ws, vars, "y")});
    FreeGradedModule<FpField> H(r2, {2}, {});
    // phi = (0, -y, x)*h: psi o phi = -xy + yx = 0
    HomogeneousMap<FpField> phi(H, G,
                                {P(2), parse_poly(K, ws, vars, "-1*y"),
                                 parse_poly(K, ws, vars, "x")});
    Engine<FpField> e2(r2, EngineOptions{6, 1, 1});
    auto bicx = build_bicomplex(unit_psi, phi, 1);
    // split columns kill H_psi and C = Coker psi = 0; the theorem-controlled
    // range (h = grade(x,y) = 2) is i <= min(2, h-1) = 1
    for (int p = 0; p <= 1; ++p) REQUIRE(e2.n_homology_table(bicx, 904, p).total == 0);
    // beyond that range Hbar^2 embeds in Hphi^{2,0}
    REQUIRE(e2.n_homology_table(bicx, 904, 2).total <= e2.hphi_table(bicx, 2).total);
  }
}

TEST_CASE("C_lambdabar(t) as the cokernel complex M(rho - t)") {
  FpField K(32003);
  auto c = cusp(K);
  Engine<FpField> eng(c.ring, EngineOptions{17, 3, 1});
  SECTION("r = 0 gives the trivial complex") {
    // chi square: 1x1 identity-ish map
    WeightSystem ws{{1}};
    std::vector<std::string> vars{"x"};
    auto r1 = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, std::vector<P>{});
    FreeGradedModule<FpField> Fs(r1, {1}, {});
    FreeGradedModule<FpField> Gs(r1, {0}, {});
    FreeGradedModule<FpField> Hs(r1, {0}, {});
    HomogeneousMap<FpField> chi(Fs, Gs, {parse_poly(K, ws, vars, "x")});
    HomogeneousMap<FpField> lam(Gs, Hs, {P(0)});
    auto cx = build_C_lambda_bar(chi, lam, 0);
    REQUIRE(cx.terms().empty());
  }
  SECTION("cusp at t = 0: the truncated H~^0 has length 2") {
    auto cx = build_C_lambda_bar(c.chi, c.lambda, 0);
    REQUIRE(eng.validate_complex(cx).ok);
    auto trunc = truncate_nonneg(cx);
    REQUIRE(trunc.first_position() == 0);
    auto t0 = eng.length(trunc, 0);
    REQUIRE(t0.total == 2);
    REQUIRE(t0.resolved());
  }
  SECTION("negative positions have finite length, proved by the window rule") {
    auto cx = build_C_lambda_bar(c.chi, c.lambda, 0);
    for (int p = cx.first_position(); p < 0; ++p) {
      auto tab = eng.length(cx.term(p));
      REQUIRE(tab.termination == Termination::proved);
    }
  }
  SECTION("truncate_nonneg leaves nonnegative complexes alone") {
    auto cx = build_C_lambda_bar(c.chi, c.lambda, 0);
    auto trunc = truncate_nonneg(cx);
    REQUIRE(truncate_nonneg(trunc).first_position() == 0);
    REQUIRE(truncate_nonneg(ChainComplex<FpField>()).terms().empty());
    // homology at positions >= 1 is unchanged
    for (int p = 1; p <= trunc.last_position(); ++p)
      REQUIRE(eng.length(trunc, p).total == eng.length(cx, p).total);
  }
  SECTION("lambda o chi != 0 is rejected") {
    // use lambda' = (x, 0) which does not kill chi
    WeightSystem ws = c.ring->weight_system();
    FreeGradedModule<FpField> Gs(c.ring, {2, 3}, {});
    FreeGradedModule<FpField> Hs(c.ring, {0}, {});
    HomogeneousMap<FpField> bad(Gs, Hs,
                                {parse_poly(K, ws, c.ring->var_names(), "x"), P(3)});
    REQUIRE_THROWS_AS(build_C_lambda_bar(c.chi, bad, 0), CompositionNonzero);
  }
}

TEST_CASE("exterior powers of a cokernel match the wedge-span oracle") {
  FpField K(32003);
  WeightSystem ws{{1, 1, 1}};
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<P> rels = {parse_poly(K, ws, vars, "x^3+y^3+z^3")};
  auto ring = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, rels);
  Engine<FpField> eng(ring, EngineOptions{8, 1, 1});
  FreeGradedModule<FpField> Fs(ring, {3}, {"F"});
  FreeGradedModule<FpField> Gs(ring, {1, 1, 1}, {"a", "b", "c"});
  HomogeneousMap<FpField> chi(Fs, Gs,
                              {parse_poly(K, ws, vars, "3*x^2"), parse_poly(K, ws, vars, "3*y^2"),
                               parse_poly(K, ws, vars, "3*z^2")});
  auto lam2 = exterior_power_of_cokernel(eng, chi, 2);
  // oracle: dim (Lambda^2 G)_d minus the rank of the k-span of u ^ v with
  // u running over a basis of (im chi)_{d1} and v over a basis of G_{d2}
  for (int d = 2; d <= 6; ++d) {
    auto amb = eng.free_slice(lam2.ambient(), d);
    std::vector<std::vector<FpField::Elem>> span_cols;
    for (int d1 = 0; d1 <= d; ++d1) {
      int d2 = d - d1;
      auto chi_slice = eng.map_slice(chi, d1);
      auto gs2 = eng.free_slice(Gs, d2);
      auto gs1 = eng.free_slice(Gs, d1);
      for (int uc = 0; uc < chi_slice.cols(); ++uc) {
        // u components as quotient-coordinate vectors per generator
        for (int gj = 0; gj < 3; ++gj) {
          int e2 = gs2.gen_degree[gj];
          if (e2 < 0) continue;
          for (int mono2 = 0; mono2 < ring->dim(e2); ++mono2) {
            // v = mono2-th basis vector of R_{e2} in slot gj; expand u ^ v
            std::vector<FpField::Elem> col(amb.dim, K.zero());
            bool nonzero = false;
            for (int gi = 0; gi < 3; ++gi) {
              if (gi == gj) continue;
              int e1 = gs1.gen_degree[gi];
              if (e1 < 0) continue;
              // u_gi spans R_{e1} coordinates gs1.offsets[gi]..
              for (int mono1 = 0; mono1 < ring->dim(e1); ++mono1) {
                auto coeff = chi_slice.at(gs1.offsets[gi] + mono1, uc);
                if (K.is_zero(coeff)) continue;
                // e_gi ^ e_gj with polynomial coefficients mono1 * mono2:
                // multiply the two quotient-basis monomials
                const auto& b1 = ring->monomial_basis(e1);
                const auto& b2 = ring->monomial_basis(e2);
                auto m1 = b1[ring->chart(e1).free_coords()[mono1]];
                auto m2 = b2[ring->chart(e2).free_coords()[mono2]];
                std::vector<int> prod(m1.size());
                for (std::size_t q = 0; q < prod.size(); ++q) prod[q] = m1[q] + m2[q];
                // locate the wedge generator index (sorted pair) and sign
                int lo = std::min(gi, gj), hi = std::max(gi, gj);
                int sign = gi < gj ? 1 : -1;
                int pair_idx = lo == 0 ? (hi == 1 ? 0 : 1) : 2;
                int ed = d - lam2.ambient().twists()[pair_idx];
                auto v = ring->chart(ed).project(
                    K, [&] {
                      std::vector<FpField::Elem> w(ring->poly_dim(ed), K.zero());
                      w[ring->monomial_index(ed, prod)] = K.one();
                      return w;
                    }());
                auto base = eng.free_slice(lam2.ambient(), d).offsets[pair_idx];
                for (int q = 0; q < static_cast<int>(v.size()); ++q) {
                  if (K.is_zero(v[q])) continue;
                  auto c2 = sign == 1 ? K.mul(coeff, v[q]) : K.neg(K.mul(coeff, v[q]));
                  col[base + q] = K.add(col[base + q], c2);
                  nonzero = true;
                }
              }
            }
            if (nonzero) span_cols.push_back(std::move(col));
          }
        }
      }
    }
    Matrix<FpField> span(K, amb.dim, static_cast<int>(span_cols.size()));
    for (int cidx = 0; cidx < span.cols(); ++cidx)
      for (int ridx = 0; ridx < amb.dim; ++ridx) span.at(ridx, cidx) = span_cols[cidx][ridx];
    long long oracle = amb.dim - rank(K, span);
    REQUIRE(eng.module_dim(lam2, d) == oracle);
  }
}

TEST_CASE("D_phi(t) resolves S_{s-t}(D) when grade I_phi = s + 1") {
  FpField K(32003);
  WeightSystem ws{{1, 1, 1}};
  std::vector<std::string> vars{"x", "y", "z"};
  auto ring = std::make_shared<const WeightedRing<FpField>>(K, ws, vars, std::vector<P>{});
  Engine<FpField> eng(ring, EngineOptions{8, 1, 1});
  FreeGradedModule<FpField> H(ring, {1}, {"h"});
  FreeGradedModule<FpField> G(ring, {0, 0, 0}, {"g1", "g2", "g3"});
  HomogeneousMap<FpField> phi(H, G,
                              {parse_poly(K, ws, vars, "x"), parse_poly(K, ws, vars, "y"),
                               parse_poly(K, ws, vars, "z")});
  // s = n - l = 2 and grade I_phi = grade (x,y,z) = 3 = s + 1
  for (int t = 0; t <= 2; ++t) {
    auto cx = build_D_phi(phi, t);
    REQUIRE(eng.validate_complex(cx).ok);
    for (int i = cx.first_position(); i < cx.last_position(); ++i)
      REQUIRE(eng.length(cx, i).total == 0);
    auto end = eng.length(cx, cx.last_position());
    auto sd = symmetric_power_of_cokernel(eng, dual_map(phi), 2 - t);
    REQUIRE(end.total == eng.length(sd).total);
    REQUIRE(end.total == 1);  // S_k(R/(x,y,z)) has length 1
  }
}

TEST_CASE("C_psi(-1) end cokernel matches Lambda^{r+1} Coker psi^*") {
  FpField K(32003);
  RingPtr<FpField> ring;
  auto psi = classical_koszul_psi(K, ring);
  Engine<FpField> eng(ring, EngineOptions{8, 1, 1});
  auto cx = build_C_psi(psi, -1);
  for (int i = cx.first_position(); i < cx.last_position(); ++i)
    REQUIRE(eng.length(cx, i).total == 0);
  auto end = eng.length(cx, cx.last_position());
  auto lam = symmetric_power_of_cokernel(eng, psi, -1);  // Lambda^{r+1} Coker psi^*
  REQUIRE(end.total == eng.length(lam).total);
}

TEST_CASE("C_psibar(r) on the cusp") {
  FpField K(32003);
  auto c = cusp(K);
  Engine<FpField> eng(c.ring, EngineOptions{17, 3, 1});
  auto cx = build_C_psi_bar(c.phi, c.psi, 1);
  REQUIRE(cx.first_position() == 0);
  REQUIRE(cx.last_position() == 2);
  REQUIRE(eng.validate_complex(cx).ok);
  REQUIRE(eng.length(cx, 0).total == 0);
  REQUIRE(eng.length(cx, 1).total == 0);
  auto h2 = eng.length(cx, 2);
  REQUIRE(h2.total == 2);
}
