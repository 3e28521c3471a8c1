#include "doctest.h"

#include "djhp/report.hpp"
#include "support/corpus.hpp"

using namespace djhp;

TEST_CASE("report for the k[x]/x^2 pair: case 1 via the local corollary") {
    DJHPReport r = djhp_report(corpus::load("kx2.qa"), corpus::load("ky2.qa"));
    CHECK(r.verdict == DJHPReport::Verdict::FailsCase1);
    CHECK(r.via_cor_local);
    CHECK(r.A.local);
    CHECK(r.A.nonsimple);
    CHECK(r.A.derived_simple == AlgebraFlags::DerivedSimple::AutoLocal);
    CHECK(r.A.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite);
    CHECK(r.lambda_dim == 10);
    CHECK(r.lambda_rank == 2);
    // R1 factors: k and the dim-4 corner
    CHECK(r.r1.quotient_dim == 1);
    CHECK(r.r1.corner_dim == 4);
    CHECK(r.r1.quotient_report.identified_as == "k^1");
    // R2 factors: kx2 and ky2, witnessed
    CHECK(r.r2.quotient_report.identified_as == "kx2");
    CHECK(r.r2.corner_report.identified_as == "ky2");
    // rank accounting on both recollements
    CHECK(r.r1.quotient_rank + r.r1.corner_rank == r.lambda_rank);
    CHECK(r.r2.quotient_rank + r.r2.corner_rank == r.lambda_rank);
    // Lambda itself certified infinite -> construction hint
    CHECK(r.construction_hint);
    CHECK_FALSE(r.length_remark); // both ranks are 1
    CHECK_FALSE(r.finite_gldim_note);
}

TEST_CASE("report: local A with finite-gldim non-local B is conditional") {
    DJHPReport r = djhp_report(corpus::load("kx2.qa"), corpus::load("a3line.qa"));
    CHECK(r.verdict == DJHPReport::Verdict::Conditional);
    REQUIRE(r.conditional_missing.size() == 1);
    CHECK(r.conditional_missing[0].find("a3line") != std::string::npos);
    CHECK(r.B.inf_gldim == AlgebraFlags::InfGlDim::Finite);
    CHECK(r.B.gldim_value == 2);
    // the rank accounting is still printed/checked
    CHECK(r.r2.quotient_rank + r.r2.corner_rank == r.lambda_rank);
}

TEST_CASE("report: user-asserted derived simplicity upgrades to case 1") {
    ReportOptions opts;
    opts.assert_derived_simple_B = true;
    DJHPReport r = djhp_report(corpus::load("kx2.qa"), corpus::load("a3line.qa"), opts);
    CHECK(r.verdict == DJHPReport::Verdict::FailsCase1);
    CHECK_FALSE(r.via_cor_local);
    CHECK(r.B.derived_simple == AlgebraFlags::DerivedSimple::UserAsserted);
}

TEST_CASE("report: both asserted with finite global dimension notes the corollary") {
    ReportOptions opts;
    opts.assert_derived_simple_A = true;
    opts.assert_derived_simple_B = true;
    DJHPReport r = djhp_report(corpus::load("a4line.qa"), corpus::load("a3line.qa"), opts);
    CHECK(r.verdict == DJHPReport::Verdict::FailsCase1);
    CHECK(r.finite_gldim_note); // Lambda has finite global dimension and fails DJHP
    CHECK(r.lambda.inf_gldim == AlgebraFlags::InfGlDim::Finite);
    CHECK(r.length_remark);
    CHECK(r.length_r1_bound == 13); // 1 + 4*3
    CHECK(r.length_r2_exact == 7);  // 4 + 3
    CHECK(r.s_lower_bound_r1 == 12);
}

TEST_CASE("report: case 2 from a certified-infinite non-local factor") {
    DJHPReport r = djhp_report(corpus::load("loopline.qa"), corpus::load("kx2.qa"));
    // B = kx2 is derived simple nonsimple; A = loopline has certified infinite
    // global dimension but unknown derived simplicity
    CHECK(r.A.inf_gldim == AlgebraFlags::InfGlDim::CertifiedInfinite);
    CHECK(r.A.derived_simple == AlgebraFlags::DerivedSimple::Unknown);
    CHECK(r.verdict == DJHPReport::Verdict::FailsCase2);
}

TEST_CASE("report: simple factor gives not-established") {
    DJHPReport r = djhp_report(corpus::load("k1.qa"), corpus::load("kxk.qa"));
    CHECK_FALSE(r.A.nonsimple);
    CHECK(r.verdict == DJHPReport::Verdict::NotEstablished);
}

TEST_CASE("machine-readable report round-trips through its schema") {
    for (auto make : {std::pair<const char*, const char*>{"kx2.qa", "ky2.qa"},
                      {"kx2.qa", "a3line.qa"}, {"loopline.qa", "kx2.qa"}}) {
        CAPTURE(make.first);
        DJHPReport r = djhp_report(corpus::load(make.first), corpus::load(make.second));
        std::string once = r.to_json();
        DJHPReport back = DJHPReport::from_json(once);
        CHECK(back.to_json() == once);
        CHECK(back.verdict == r.verdict);
        CHECK(back.lambda_dim == r.lambda_dim);
        CHECK(back.r2.quotient_report.identified_as == r.r2.quotient_report.identified_as);
    }
}

TEST_CASE("report text carries the factor lists verbatim") {
    DJHPReport r = djhp_report(corpus::load("kx2.qa"), corpus::load("ky2.qa"));
    std::string text = r.to_text();
    CHECK(text.find("~ k^1") != std::string::npos);
    CHECK(text.find("dim 4") != std::string::npos);           // the corner A (x)0 B
    CHECK(text.find("~ kx2 [witnessed]") != std::string::npos);
    CHECK(text.find("~ ky2 [witnessed]") != std::string::npos);
    CHECK(text.find("DJHP-fails(case 1)") != std::string::npos);
}

TEST_CASE("finite/infinite global dimension transfers across the recollements") {
    // finite side: the line-quiver example inputs
    {
        AlgebraPtr A = corpus::build("a4line.qa").algebra;
        AlgebraPtr B = corpus::build("a3line.qa").algebra;
        CHECK(global_dimension_bound(A, 8).overall == GlDimReport::Overall::Finite);
        CHECK(global_dimension_bound(B, 8).overall == GlDimReport::Overall::Finite);
        TwistedTensor T = build_twisted_tensor(A, B);
        CHECK(global_dimension_bound(T.algebra, 8).overall == GlDimReport::Overall::Finite);
        LambdaAlgebra L = build_lambda(A, B);
        CHECK(global_dimension_bound(L.algebra, 8).overall == GlDimReport::Overall::Finite);
    }
    // infinite side: the k[x]/x^2 pair
    {
        AlgebraPtr A = corpus::build("kx2.qa").algebra;
        AlgebraPtr B = corpus::build("ky2.qa").algebra;
        CHECK(global_dimension_bound(A, 8).overall == GlDimReport::Overall::Infinite);
        CHECK(global_dimension_bound(B, 8).overall == GlDimReport::Overall::Infinite);
        LambdaAlgebra L = build_lambda(A, B);
        CHECK(global_dimension_bound(L.algebra, 8).overall == GlDimReport::Overall::Infinite);
    }
}
