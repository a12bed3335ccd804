/*
 * Copyright (C) 2026 The fairdiv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <random>

#include "fairdiv/dual.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/piecewise_constant.hpp"
#include "oracles.hpp"

using namespace fairdiv;

namespace {

Rational q(const char* text) { return parse_rational(text); }

ExactValuationPtr share(PiecewiseConstantValuation v) {
  return std::make_shared<PiecewiseConstantValuation>(std::move(v));
}

PiecewiseConstantValuation two_step() {
  return PiecewiseConstantValuation({{q("1/2"), q("3/2")}, {1, q("1/2")}});
}

Rational random_point(std::mt19937_64& rng, unsigned long den = 1009) {
  return ratio(std::uniform_int_distribution<unsigned long>(0, den)(rng), den);
}

}  // namespace

TEST(DualOracle, FrozenValues) {
  oracle::StepDensity f{{{0.5, 1.5}, {1.0, 0.5}}};
  // dual_eval(0, 3/4) = cut(0, 3/4) - cut(0, 0)
  EXPECT_NEAR(oracle::cut_by_bisection(f, 0.0, 0.75) - oracle::cut_by_bisection(f, 0.0, 0.0), 0.5, 1e-6);
  // dual_cut(0, 1/2) = eval(0, cut(0, 0) + 1/2)
  EXPECT_NEAR(oracle::integrate(f, 0.0, oracle::cut_by_bisection(f, 0.0, 0.0) + 0.5), 0.75, 1e-6);
  // dual_piece([0, 1/2]) = [eval(0,0), eval(0,1/2)]
  EXPECT_NEAR(oracle::integrate(f, 0.0, 0.5), 0.75, 1e-9);
}

TEST(DualValuation, UniformIsSelfDual) {
  ExactReferee base({share(PiecewiseConstantValuation::uniform())});
  DualValuation d(base, 0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    Rational a = random_point(rng);
    Rational b = random_point(rng);
    if (a > b) {
      std::swap(a, b);
    }
    EXPECT_EQ(d.eval(a, b), b - a);
  }
  EXPECT_EQ(d.cut(q("1/4"), q("1/2")), q("3/4"));
  EXPECT_EQ(d.cut(q("3/4"), q("1/2")), std::nullopt);
}

TEST(DualValuation, TwoStepExamples) {
  ExactReferee base({share(two_step())});
  DualValuation d(base, 0);
  EXPECT_EQ(d.eval(0, q("3/4")), q("1/2"));
  EXPECT_EQ(d.cut(0, q("1/2")), q("3/4"));
}

TEST(DualValuation, NormalizedForPositiveBases) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ExactReferee base({share(random_dense_valuation(7, DensityBounds{}, seed))});
    DualValuation d(base, 0);
    EXPECT_EQ(d.eval(0, 1), 1);
  }
}

TEST(DualValuation, CostsTwoBaseQueries) {
  ExactReferee base({share(two_step())});
  DualValuation d(base, 0);
  d.eval(q("1/5"), q("3/5"));
  EXPECT_EQ(base.total(), 2u);
  d.cut(q("1/5"), q("1/5"));
  EXPECT_EQ(base.total(), 4u);
}

TEST(DualValuation, NoAnswerCostsOneBaseQuery) {
  // The target lies past 1 after the first base cut, so no eval follows.
  ExactReferee base({share(PiecewiseConstantValuation::uniform())});
  DualValuation d(base, 0);
  EXPECT_EQ(d.cut(q("3/4"), q("1/2")), std::nullopt);
  EXPECT_EQ(base.total(), 1u);
}

TEST(DualValuation, RejectsBadArguments) {
  ExactReferee base({share(two_step())});
  DualValuation d(base, 0);
  EXPECT_THROW(d.eval(q("1/2"), q("1/4")), ArgumentError);
  EXPECT_THROW(d.cut(0, q("-1/2")), ArgumentError);
  EXPECT_EQ(base.total(), 0u);
}

TEST(ClosedForm, Uniform) {
  EXPECT_EQ(dual_pwc_closed_form(PiecewiseConstantValuation::uniform()), PiecewiseConstantValuation::uniform());
}

TEST(ClosedForm, TwoStep) {
  PiecewiseConstantValuation expected({{q("3/4"), q("2/3")}, {1, 2}});
  EXPECT_EQ(dual_pwc_closed_form(two_step()), expected);
  EXPECT_EQ(dual_pwc_closed_form(dual_pwc_closed_form(two_step())), two_step());
}

TEST(ClosedForm, RejectsNonPositive) {
  PiecewiseConstantValuation v({{q("1/2"), 2}, {1, 0}});
  EXPECT_THROW(dual_pwc_closed_form(v), NotPositiveError);
}

TEST(ClosedForm, AgreesWithBlackBox) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto v = random_dense_valuation(9, DensityBounds{0, Rational(2)}, seed);
    auto closed = dual_pwc_closed_form(v);
    ExactReferee base({share(v)});
    DualValuation d(base, 0);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 100; ++i) {
      Rational a = random_point(rng);
      Rational b = random_point(rng);
      if (a > b) {
        std::swap(a, b);
      }
      EXPECT_EQ(d.eval(a, b), closed.eval(a, b));
      EXPECT_EQ(d.cut(a, b - a), closed.cut(a, b - a));
    }
  }
}

TEST(DualPiece, Examples) {
  Piece p = Piece::normalize({Interval(q("1/8"), q("1/3")), Interval(q("1/2"), q("7/9"))});
  EXPECT_EQ(dual_piece(PiecewiseConstantValuation::uniform(), p), p);
  EXPECT_EQ(dual_piece(two_step(), Piece::single(0, q("1/2"))), Piece::single(0, q("3/4")));
}

TEST(DualPiece, RoundTripsThroughTheDual) {
  auto v = random_dense_valuation(6, DensityBounds{}, 11);
  auto dual = dual_pwc_closed_form(v);
  Piece p = Piece::normalize({Interval(q("1/10"), q("1/4")), Interval(q("3/5"), q("9/10"))});
  Piece image = dual_piece(v, p);
  EXPECT_EQ(dual_piece(dual, image), p);
  // Widths and values swap roles under dualization.
  EXPECT_EQ(image.width(), value_of_piece(v, p));
  EXPECT_EQ(value_of_piece(dual, image), p.width());
}

TEST(Reduction, UniformAllHeavy) {
  std::vector<PiecewiseConstantValuation> vs(3, PiecewiseConstantValuation::uniform());
  ReductionReport report = reduction_pipeline(vs, protocol_by_name("even-paz"));
  EXPECT_EQ(report.certificate_count, 3u);
  EXPECT_EQ(report.light_count, 3u);
}

TEST(Reduction, NineRandomPlayers) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<PiecewiseConstantValuation> vs;
    for (std::uint64_t i = 0; i < 9; ++i) {
      vs.push_back(random_dense_valuation(8, DensityBounds{0, Rational(2)}, seed * 100 + i));
    }
    ReductionReport report = reduction_pipeline(vs, protocol_by_name("even-paz"));
    EXPECT_GE(report.certificate_count, 3u);
    for (const ReductionEntry& c : report.certificates()) {
      EXPECT_LE(c.width, q("1/9"));
      EXPECT_GE(c.value, q("1/18"));
      EXPECT_EQ(c.value, value_of_piece(vs[c.player], c.piece));
    }
  }
}

TEST(Reduction, RejectsNonDenseInput) {
  std::vector<PiecewiseConstantValuation> vs{PiecewiseConstantValuation::uniform(),
                                             PiecewiseConstantValuation({{q("1/4"), 3}, {1, q("1/3")}})};
  EXPECT_THROW(reduction_pipeline(vs, protocol_by_name("even-paz")), ArgumentError);
}

TEST(Reduction, RejectsNonPositiveInput) {
  std::vector<PiecewiseConstantValuation> vs{PiecewiseConstantValuation::uniform(),
                                             PiecewiseConstantValuation({{q("1/2"), 2}, {1, 0}})};
  EXPECT_THROW(reduction_pipeline(vs, protocol_by_name("even-paz")), NotPositiveError);
}

TEST(Reduction, FlagsNonProportionalProtocol) {
  // Hands everything to player 0, which is never proportional for n = 2.
  Protocol greedy = [](ExactReferee& ref, Mode) {
    ref.eval(0, 0, 1);
    return Allocation{{Piece::single(0, 1), Piece()}};
  };
  std::vector<PiecewiseConstantValuation> vs(2, PiecewiseConstantValuation::uniform());
  EXPECT_THROW(reduction_pipeline(vs, greedy), ProtocolViolation);
}

TEST(Reduction, QueryAccounting) {
  std::vector<PiecewiseConstantValuation> vs;
  for (std::uint64_t i = 0; i < 27; ++i) {
    vs.push_back(random_dense_valuation(5, DensityBounds{0, Rational(2)}, i));
  }
  ReductionReport report = reduction_pipeline(vs, protocol_by_name("even-paz"));
  EXPECT_GE(report.base_queries_protocol, report.dual_queries);
  EXPECT_LE(report.base_queries_protocol, 2 * report.dual_queries);
  std::uint64_t per_player = 0;
  for (const ReductionEntry& e : report.entries) {
    per_player += e.base_queries;
  }
  EXPECT_EQ(per_player, report.base_queries_protocol + report.base_queries_dualization);
  // Dualizing X_i is one dual eval per endpoint, two base cuts each.
  std::uint64_t endpoints = 0;
  for (const ReductionEntry& e : report.entries) {
    endpoints += 2 * e.dual_piece.intervals().size();
  }
  EXPECT_EQ(report.base_queries_dualization, 2 * endpoints);
}

TEST(Reduction, EvenPazOnDualsBillsTwoPerAnswer) {
  std::vector<ExactValuationPtr> bases;
  for (std::uint64_t i = 0; i < 27; ++i) {
    bases.push_back(share(random_dense_valuation(5, DensityBounds{0, Rational(2)}, i)));
  }
  ExactReferee base(bases);
  std::vector<ExactValuationPtr> duals;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    duals.push_back(std::make_shared<DualValuation>(base, i));
  }
  ExactReferee dual(duals);
  even_paz(dual, Mode::Chore);
  std::uint64_t answered = 0;
  std::uint64_t no_answer = 0;
  for (const auto& record : dual.log()) {
    (record.kind == QueryKind::Cut && !record.point ? no_answer : answered) += 1;
  }
  EXPECT_EQ(base.total(), 2 * answered + no_answer);
}
