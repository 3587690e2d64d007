#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "evfuse/combinators.hpp"
#include "oracle/reference.hpp"

namespace evfuse {
namespace {

void expect_interval(const EvidenceInterval& got, double lower, double upper, double tol)
{
    EXPECT_NEAR(got.lower(), lower, tol) << got;
    EXPECT_NEAR(got.upper(), upper, tol) << got;
}

EvidenceInterval iv(double a, double b)
{
    return make_interval(a, b);
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const EvidenceError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an EvidenceError";
    return ErrorCode::EmptyInput;
}

// -- T-P ----------------------------------------------------------------

TEST(CombineTp, PublishedExamples)
{
    expect_interval(combine_tp(iv(0.2, 0.4), iv(0.7, 0.9)).result, 0.42, 0.65, 0.01);
    expect_interval(combine_tp(iv(0.1, 0.2), iv(0.3, 0.4)).result, 0.22, 0.28, 0.01);
    expect_interval(combine_tp(iv(0.2, 0.6), iv(0.2, 0.6)).result, 0.25, 0.5, 0.005);
    expect_interval(combine_tp(iv(0.0, 0.3), iv(0.0, 0.4)).result, 0.0, 0.21, 0.01);
    expect_interval(combine_tp(iv(0.6, 1.0), iv(0.7, 1.0)).result, 0.79, 1.0, 0.005);
}

TEST(CombineTp, ExactSmallRationalCase)
{
    // Images (-0.9, 1.2) each; sum (-1.8, 2.4) has radius 3 and
    // tan(theta/2) = 2, giving exactly [0.25, 0.5].
    expect_interval(combine_tp(iv(0.2, 0.6), iv(0.2, 0.6)).result, 0.25, 0.5, 1e-12);
}

TEST(CombineTp, ReportCarriesSumAndConflict)
{
    const FusionReport r = combine_tp(iv(0.2, 0.4), iv(0.7, 0.9));
    EXPECT_EQ(r.rule, Rule::TP);
    EXPECT_TRUE(r.conflict);
    ASSERT_TRUE(r.intermediate);
    EXPECT_NEAR(r.intermediate->u, 0.64, 1e-12);
    EXPECT_NEAR(r.intermediate->v, 3.52, 1e-12);
    EXPECT_FALSE(r.ds_conflict_mass);
    EXPECT_FALSE(r.p_used);
    EXPECT_FALSE(combine_tp(iv(0.6, 0.8), iv(0.7, 0.9)).conflict);
}

TEST(CombineTp, VacuousIsIdentity)
{
    for (auto e : {iv(0.2, 0.4), iv(0.0, 0.3), iv(0.6, 1.0), iv(0.5, 0.5)}) {
        expect_interval(combine_tp(e, EvidenceInterval::vacuous()).result, e.lower(), e.upper(), 1e-9);
    }
}

// -- cT -----------------------------------------------------------------

TEST(Ct, Examples)
{
    for (double p : {1.0, 2.0, 4.0, 10.0, 64.0}) {
        EXPECT_EQ(ct(2.5, 0.0, p), 2.5);
        EXPECT_EQ(ct(-1.25, 0.0, p), -1.25);
        EXPECT_EQ(ct(3.0, -3.0, p), 0.0);
    }
    EXPECT_NEAR(ct(1.5, 2.3333, 4.0), 2.427, 5e-4);
    EXPECT_EQ(ct(1.5, -0.25, 1.0), 1.25);
}

TEST(Ct, MatchesBranchwiseDefinition)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(-20.0, 20.0);
    std::uniform_real_distribution<double> exponent(1.0, 12.0);
    for (int i = 0; i < 20000; ++i) {
        const double x = val(rng);
        const double y = val(rng);
        const double p = exponent(rng);
        const double ref = oracle::ct_branches(x, y, p);
        ASSERT_NEAR(ct(x, y, p), ref, 1e-9 * std::max(1.0, std::abs(ref))) << x << ' ' << y << ' ' << p;
    }
}

TEST(Ct, ApproachesMaxAtClamp)
{
    EXPECT_NEAR(ct(3.2, 3.84, kMaxExponent), 3.84, 3.84 * 0.001);
    EXPECT_NEAR(ct(-3.2, -3.84, kMaxExponent), -3.84, 3.84 * 0.001);
}

TEST(Ct, NoOverflowForLargeRadii)
{
    const double big = 1e9;
    EXPECT_NEAR(ct(big, big, 64.0), big * std::pow(2.0, 1.0 / 64.0), 1e-3 * big);
}

TEST(Ct, RejectsBadArguments)
{
    EXPECT_EQ(code_of([] { ct(1.0, 1.0, 0.5); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { ct(1.0, 1.0, 65.0); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { ct(std::nan(""), 1.0, 2.0); }), ErrorCode::NonFinite);
}

// -- estimate_p ---------------------------------------------------------

TEST(EstimateP, Examples)
{
    const DependencyParam berries = estimate_p(0.9, 0.7);
    EXPECT_EQ(berries.p(), 4.0);
    EXPECT_EQ(berries.alpha1(), 0.9);
    EXPECT_EQ(berries.alpha2(), 0.7);

    const DependencyParam neutral = estimate_p(0.5, 0.5);
    EXPECT_EQ(neutral.p(), 1.0);
    EXPECT_EQ(neutral.raw_p(), 1.0);

    const DependencyParam total = estimate_p(1.0, 1.0);
    EXPECT_EQ(total.p(), kMaxExponent);
    EXPECT_TRUE(std::isinf(*total.raw_p()));
}

TEST(EstimateP, ClampsWeakDependencyUpToOne)
{
    const DependencyParam dep = estimate_p(0.1, 0.2);
    EXPECT_EQ(dep.p(), 1.0);
    EXPECT_LT(*dep.raw_p(), 1.0);
}

TEST(EstimateP, RejectsBadAlphas)
{
    EXPECT_EQ(code_of([] { estimate_p(1.1, 0.5); }), ErrorCode::InvalidAlpha);
    EXPECT_EQ(code_of([] { estimate_p(0.5, -0.01); }), ErrorCode::InvalidAlpha);
    EXPECT_EQ(code_of([] { estimate_p(std::nan(""), 0.5); }), ErrorCode::NonFinite);
}

TEST(DependencyParam, ExplicitExponentRange)
{
    EXPECT_EQ(DependencyParam::from_exponent(10.0).p(), 10.0);
    EXPECT_FALSE(DependencyParam::from_exponent(10.0).alpha1());
    EXPECT_EQ(code_of([] { DependencyParam::from_exponent(0.9); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { DependencyParam::from_exponent(64.5); }), ErrorCode::InvalidExponent);
}

// -- mTP ----------------------------------------------------------------

TEST(CombineMtp, PublishedExamples)
{
    const FusionReport berries = combine_mtp(iv(0.6, 1.0), iv(0.7, 1.0), estimate_p(0.9, 0.7));
    expect_interval(berries.result, 0.71, 1.0, 0.01);
    EXPECT_EQ(berries.p_used, 4.0);
    EXPECT_EQ(berries.rule, Rule::MTP);

    const FusionReport radar = combine_mtp(iv(0.6, 0.8), iv(0.7, 0.9), DependencyParam::from_exponent(10.0));
    expect_interval(radar.result, 0.65, 0.82, 0.02);
}

TEST(CombineMtp, ReducesToTpAtPOne)
{
    const auto one = DependencyParam::from_exponent(1.0);
    const EvidenceInterval m = combine_mtp(iv(0.2, 0.4), iv(0.7, 0.9), one).result;
    const EvidenceInterval t = combine_tp(iv(0.2, 0.4), iv(0.7, 0.9)).result;
    expect_interval(m, t.lower(), t.upper(), 1e-9);
}

TEST(CombineMtp, MoreDependencyMeansLessReinforcement)
{
    const std::pair<EvidenceInterval, EvidenceInterval> inputs[] = {
        {iv(0.6, 1.0), iv(0.7, 1.0)},
        {iv(0.6, 0.8), iv(0.7, 0.9)},
    };
    for (const auto& [x, y] : inputs) {
        double previous = 2.0;
        for (double p = 1.0; p <= kMaxExponent; p += 0.5) {
            const double lower = combine_mtp(x, y, DependencyParam::from_exponent(p)).result.lower();
            ASSERT_LE(lower, previous + 1e-15) << "p = " << p;
            previous = lower;
        }
    }
}

// -- D-S ----------------------------------------------------------------

TEST(CombineDs, PublishedExamples)
{
    const FusionReport jaundice = combine_ds(iv(0.2, 0.4), iv(0.7, 0.9));
    expect_interval(jaundice.result, 0.5714, 0.6429, 1e-4);
    EXPECT_NEAR(*jaundice.ds_conflict_mass, 0.44, 1e-12);

    expect_interval(combine_ds(iv(0.1, 0.2), iv(0.3, 0.4)).result, 0.10, 0.11, 0.005);
    expect_interval(combine_ds(iv(0.6, 1.0), iv(0.7, 1.0)).result, 0.88, 1.0, 1e-12);
    expect_interval(combine_ds(iv(0.6, 0.8), iv(0.7, 0.9)).result, 0.85, 0.9, 0.005);
    expect_interval(combine_ds(iv(0.15, 0.25), iv(0.8, 0.9)).result, 0.56, 0.58, 0.005);
}

TEST(CombineDs, TotalConflict)
{
    EXPECT_EQ(code_of([] { combine_ds(iv(1.0, 1.0), iv(0.0, 0.0)); }), ErrorCode::TotalConflict);
}

TEST(CombineDs, MatchesEnumeratedDempster)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        double a1 = unit(rng), b1 = unit(rng), a2 = unit(rng), b2 = unit(rng);
        if (a1 > b1) std::swap(a1, b1);
        if (a2 > b2) std::swap(a2, b2);
        const auto ref = oracle::dempster_enumerated(a1, b1, a2, b2);
        const FusionReport r = combine_ds(iv(a1, b1), iv(a2, b2));
        ASSERT_NEAR(r.result.lower(), ref.lower, 1e-12);
        ASSERT_NEAR(r.result.upper(), ref.upper, 1e-12);
        ASSERT_NEAR(*r.ds_conflict_mass, ref.conflict, 1e-15);
    }
}

TEST(CombineDs, MassConservation)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        double a1 = unit(rng), b1 = unit(rng), a2 = unit(rng), b2 = unit(rng);
        if (a1 > b1) std::swap(a1, b1);
        if (a2 > b2) std::swap(a2, b2);
        const MassTriple m = combine_masses(MassTriple::from_interval(iv(a1, b1)),
                                            MassTriple::from_interval(iv(a2, b2)));
        ASSERT_NEAR(m.total(), 1.0, 1e-12);
        ASSERT_GE(m.h, 0.0);
        ASSERT_GE(m.not_h, 0.0);
        ASSERT_GE(m.theta, 0.0);
    }
}

// -- fold ---------------------------------------------------------------

TEST(Fold, SingletonAndEmpty)
{
    const std::vector<EvidenceInterval> one{iv(0.2, 0.4)};
    EXPECT_EQ(fold(Rule::TP, one).result, iv(0.2, 0.4));
    EXPECT_EQ(fold(Rule::DS, one).result, iv(0.2, 0.4));
    EXPECT_EQ(code_of([] { fold(Rule::TP, std::vector<EvidenceInterval>{}); }), ErrorCode::EmptyInput);
}

TEST(Fold, RepeatedIdentity)
{
    const EvidenceInterval e = iv(0.3, 0.55);
    const std::vector<EvidenceInterval> xs{e, EvidenceInterval::vacuous(), EvidenceInterval::vacuous()};
    expect_interval(fold(Rule::TP, xs).result, e.lower(), e.upper(), 1e-9);
}

TEST(Fold, MtpNeedsDependency)
{
    const std::vector<EvidenceInterval> xs{iv(0.2, 0.4), iv(0.3, 0.5)};
    EXPECT_EQ(code_of([&] { fold(Rule::MTP, xs); }), ErrorCode::MissingDependency);
    EXPECT_NO_THROW(fold(Rule::MTP, xs, DependencyParam::from_exponent(3.0)));
}

TEST(Fold, PropagatesTotalConflict)
{
    const std::vector<EvidenceInterval> xs{iv(0.2, 0.4), iv(1.0, 1.0), iv(0.0, 0.0)};
    EXPECT_EQ(code_of([&] { fold(Rule::DS, xs); }), ErrorCode::TotalConflict);
}

TEST(Fold, OrderIndependentAndMatchesBatchSum)
{
    const EvidenceInterval a = iv(0.1, 0.2), b = iv(0.3, 0.4), c = iv(0.7, 0.9);
    const std::vector<EvidenceInterval> left{a, b, c};
    const EvidenceInterval lfold = fold(Rule::TP, left).result;
    const EvidenceInterval rfold = combine_tp(a, combine_tp(b, c).result).result;

    // Batch oracle: add all three images once, invert once.
    const oracle::Vec za = oracle::limit_map(0.1, 0.2);
    const oracle::Vec zb = oracle::limit_map(0.3, 0.4);
    const oracle::Vec zc = oracle::limit_map(0.7, 0.9);
    const EvidenceInterval batch = from_half_plane({za.u + zb.u + zc.u, za.v + zb.v + zc.v});

    expect_interval(lfold, rfold.lower(), rfold.upper(), 1e-9);
    expect_interval(lfold, batch.lower(), batch.upper(), 1e-9);
}

TEST(Fold, ConflictFlagAccumulates)
{
    const std::vector<EvidenceInterval> xs{iv(0.2, 0.4), iv(0.7, 0.9), iv(0.6, 0.7)};
    const FusionReport r = fold(Rule::TP, xs);
    EXPECT_TRUE(r.conflict);
    EXPECT_EQ(r.count, 3u);
}

TEST(Fuser, RunningMatchesBatch)
{
    const std::vector<EvidenceInterval> xs{iv(0.2, 0.4), iv(0.7, 0.9), iv(0.1, 0.6), iv(0.5, 0.95)};
    for (Rule rule : {Rule::DS, Rule::TP, Rule::MTP}) {
        Fuser fuser(rule, DependencyParam::from_exponent(2.5));
        for (const auto& e : xs) fuser.push(e);
        const FusionReport batch = fold(rule, xs, DependencyParam::from_exponent(2.5));
        EXPECT_EQ(fuser.report().result, batch.result) << to_string(rule);
    }
    EXPECT_EQ(code_of([] { Fuser(Rule::TP).report(); }), ErrorCode::EmptyInput);
}

TEST(ParseRule, Names)
{
    EXPECT_EQ(parse_rule("tp"), Rule::TP);
    EXPECT_EQ(parse_rule("MTP"), Rule::MTP);
    EXPECT_EQ(parse_rule("Ds"), Rule::DS);
    EXPECT_FALSE(parse_rule("bayes"));
}

// -- laws on random inputs ------------------------------------------------

class RuleLaws : public ::testing::TestWithParam<Rule> {
protected:
    EvidenceInterval draw()
    {
        double a = unit_(rng_), b = unit_(rng_);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6) b = std::min(1.0, a + 1e-6), a = b - 1e-6;
        return iv(a, b);
    }
    FusionReport op(const EvidenceInterval& x, const EvidenceInterval& y)
    {
        return combine(GetParam(), x, y, DependencyParam::from_exponent(3.0));
    }

    std::mt19937_64 rng_{99};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

TEST_P(RuleLaws, ClosureCommutativityAssociativity)
{
    for (int i = 0; i < 20000; ++i) {
        const EvidenceInterval x = draw(), y = draw(), z = draw();
        const EvidenceInterval xy = op(x, y).result;
        ASSERT_LE(0.0, xy.lower());
        ASSERT_LE(xy.lower(), xy.upper());
        ASSERT_LE(xy.upper(), 1.0);
        const EvidenceInterval yx = op(y, x).result;
        ASSERT_NEAR(xy.lower(), yx.lower(), 1e-12);
        ASSERT_NEAR(xy.upper(), yx.upper(), 1e-12);
        const EvidenceInterval l = op(xy, z).result;
        const EvidenceInterval r = op(x, op(y, z).result).result;
        ASSERT_NEAR(l.lower(), r.lower(), 1e-9) << x << y << z;
        ASSERT_NEAR(l.upper(), r.upper(), 1e-9) << x << y << z;
    }
}

TEST_P(RuleLaws, IdentityAndSymmetry)
{
    for (int i = 0; i < 20000; ++i) {
        const EvidenceInterval x = draw(), y = draw();
        const EvidenceInterval id = op(x, EvidenceInterval::vacuous()).result;
        ASSERT_NEAR(id.lower(), x.lower(), 1e-9);
        ASSERT_NEAR(id.upper(), x.upper(), 1e-9);
        const EvidenceInterval mirrored = complement(op(x, y).result);
        const EvidenceInterval direct = op(complement(x), complement(y)).result;
        ASSERT_NEAR(mirrored.lower(), direct.lower(), 1e-9);
        ASSERT_NEAR(mirrored.upper(), direct.upper(), 1e-9);
    }
}

INSTANTIATE_TEST_SUITE_P(AllRules, RuleLaws, ::testing::Values(Rule::DS, Rule::TP, Rule::MTP),
                         [](const auto& info) { return std::string(to_string(info.param)); });

} // namespace
} // namespace evfuse
