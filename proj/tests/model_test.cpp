#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dam/errors.hpp"
#include "dam/model/config.hpp"
#include "dam/model/forward.hpp"
#include "dam/model/layers.hpp"
#include "dam/model/loss.hpp"
#include "dam/model/lstm.hpp"
#include "dam/model/parameters.hpp"
#include "dam/numerics/gradient_check.hpp"
#include "dam/numerics/ops.hpp"
#include "test_support.hpp"

using namespace dam;
using namespace dam::model;
using numerics::ParamId;
using numerics::Tensor2;

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Independent scalar LSTM cell, gate columns [i | f | o | g].
LstmState reference_step(const std::vector<double>& x, const LstmState& prev, const Tensor2& W,
                         const Tensor2& U, const Tensor2& b) {
  const std::size_t h = U.rows();
  LstmState next{std::vector<double>(h), std::vector<double>(h)};
  for (std::size_t k = 0; k < h; ++k) {
    double z[4];
    for (int gate = 0; gate < 4; ++gate) {
      const std::size_t col = gate * h + k;
      double s = b(0, col);
      for (std::size_t d = 0; d < x.size(); ++d) s += x[d] * W(d, col);
      for (std::size_t d = 0; d < h; ++d) s += prev.h[d] * U(d, col);
      z[gate] = s;
    }
    const double i = sig(z[0]), f = sig(z[1]), o = sig(z[2]), g = std::tanh(z[3]);
    next.c[k] = f * prev.c[k] + i * g;
    next.h[k] = o * std::tanh(next.c[k]);
  }
  return next;
}

ModelParameters model_with(ModelConfig config, std::uint64_t seed = 1) {
  config.validate();
  return initialize_dam_parameters(config, seed);
}

// Copy of `from` without the attention scorer, reconfigured for `pooling`.
ModelParameters without_scorer(const ModelParameters& from, PoolingStrategy pooling) {
  ModelParameters out;
  out.config = from.config;
  out.config.pooling = pooling;
  for (std::size_t i = 0; i < from.params.size(); ++i) {
    const auto& name = from.params.name(ParamId{i});
    if (name.rfind("attn_", 0) == 0) continue;
    out.params.add(name, from.params[ParamId{i}]);
  }
  return out;
}

void zero_scorer_weights(ModelParameters& m) {
  m.params[m.params.require("attn_score.weight")].fill(0.0);
  m.params[m.params.require("attn_hidden.bias")].fill(0.37);
}

numerics::LossWithGradient end_to_end_loss(const ModelConfig& config,
                                           const std::vector<text::Document>& docs,
                                           const std::vector<text::StructuredVector>& structured,
                                           const std::vector<int>& labels) {
  return [=](const numerics::ParameterSet& params, numerics::Gradients* grads) {
    double total = 0.0;
    for (std::size_t n = 0; n < docs.size(); ++n) {
      numerics::GradientTape tape;
      ModelInput in{&docs[n], config.wide ? &structured[n] : nullptr};
      auto out = build_dam_graph(tape, config, params, in);
      auto l = loss_graph(tape, out.scores, labels[n], config.task, config.multiclass_loss);
      if (grads) tape.backward(l, *grads);
      total += tape.value(l)[0];
    }
    return total;
  };
}

}  // namespace

// ---- embedding ----

TEST(Embed, LookupAndSharedRows) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::attention, false));
  const auto& E = m.params[m.params.require("embedding")];
  const std::vector<text::TokenId> one = {7};
  const auto rows = embed(text::pad_or_crop(one, 5), m);
  EXPECT_EQ(rows.rows(), 5u);
  for (std::size_t c = 0; c < E.cols(); ++c) EXPECT_EQ(rows(0, c), E(7, c));

  const std::vector<text::TokenId> twice = {4, 4};
  const auto r2 = embed(text::pad_or_crop(twice, 2), m);
  for (std::size_t c = 0; c < E.cols(); ++c) EXPECT_EQ(r2(0, c), r2(1, c));
}

TEST(Embed, IdOutsideVocabularyIsIndexError) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::attention, false));
  const std::vector<text::TokenId> bad = {m.config.vocab_size};
  EXPECT_THROW(embed(text::pad_or_crop(bad, 3), m), IndexError);
  EXPECT_THROW(dam_forward(text::pad_or_crop(bad, 3), nullptr, m), IndexError);
}

TEST(Embed, GradientOnlyTouchesPresentRows) {
  const auto config = test::small_dam_config(Task::multiclass, PoolingStrategy::attention, false);
  auto m = model_with(config);
  std::mt19937_64 rng(15);
  test::scramble(m.params, rng);
  const std::vector<text::TokenId> ids = {3, 5, 3, 9};
  const std::vector<text::Document> docs = {text::pad_or_crop(ids, 6)};
  auto loss = end_to_end_loss(config, docs, {text::StructuredVector{}}, {2});
  numerics::Gradients g(m.params);
  loss(m.params, &g);
  const auto eid = m.params.require("embedding");
  for (std::size_t r = 0; r < config.vocab_size; ++r) {
    const bool present = r == 3 || r == 5 || r == 9;
    double mag = 0.0;
    for (std::size_t c = 0; c < config.embedding_dim; ++c) mag += std::abs(g[eid](r, c));
    if (present) {
      EXPECT_GT(mag, 0.0) << r;
    } else {
      EXPECT_EQ(mag, 0.0) << r;
      // Finite differences agree that the row does not matter.
      auto p = m.params;
      p[eid](r, 0) += 1e-5;
      const double up = loss(p, nullptr);
      p[eid](r, 0) -= 2e-5;
      EXPECT_EQ(up, loss(p, nullptr)) << r;
    }
  }
}

// ---- LSTM ----

TEST(LstmStep, ZeroWeightsGiveZeroState) {
  const Tensor2 W(3, 8), U(2, 8), b(1, 8);
  LstmCellView cell{W, U, b};
  const std::vector<double> x = {0.3, -1.2, 4.0};
  const auto s = lstm_step(x, LstmState{{0, 0}, {0, 0}}, cell);
  EXPECT_EQ(s.h, (std::vector<double>{0, 0}));
  EXPECT_EQ(s.c, (std::vector<double>{0, 0}));
}

TEST(LstmStep, ForgetBiasOneScalesCell) {
  const Tensor2 W(1, 8), U(2, 8);
  Tensor2 b(1, 8);
  b(0, 2) = b(0, 3) = 1.0;  // forget gate block
  LstmCellView cell{W, U, b};
  const std::vector<double> x = {0.0};
  const auto s = lstm_step(x, LstmState{{0, 0}, {1, 1}}, cell);
  EXPECT_NEAR(s.c[0], 0.7310585786300049, 1e-15);
  EXPECT_NEAR(s.c[1], 0.7310585786300049, 1e-15);
}

TEST(LstmStep, MatchesScalarReference) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t din = dim(rng), h = dim(rng);
    const auto W = test::random_tensor(din, 4 * h, rng);
    const auto U = test::random_tensor(h, 4 * h, rng);
    const auto b = test::random_tensor(1, 4 * h, rng);
    std::vector<double> x(din);
    LstmState prev{std::vector<double>(h), std::vector<double>(h)};
    std::uniform_real_distribution<double> u(-2, 2);
    for (double& v : x) v = u(rng);
    for (double& v : prev.h) v = u(rng);
    for (double& v : prev.c) v = u(rng);
    const auto got = lstm_step(x, prev, LstmCellView{W, U, b});
    const auto want = reference_step(x, prev, W, U, b);
    for (std::size_t k = 0; k < h; ++k) {
      worst = std::max({worst, std::abs(got.h[k] - want.h[k]), std::abs(got.c[k] - want.c[k])});
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(LstmStep, ShapeMismatchThrows) {
  const Tensor2 W(3, 8), U(2, 8), b(1, 8);
  const std::vector<double> x = {1.0};
  EXPECT_THROW(lstm_step(x, LstmState{{0, 0}, {0, 0}}, LstmCellView{W, U, b}), ShapeError);
}

TEST(Bilstm, SingleStepBothDirectionsSeeTheSameInput) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, false));
  std::mt19937_64 rng(2);
  const auto x = test::random_tensor(3, m.config.model_dim, rng);
  const auto out = bilstm(x, 1, m);
  const std::size_t h = m.config.model_dim / 2;
  for (const char* dir : {"lstm_fwd", "lstm_bwd"}) {
    const std::string p = dir;
    const auto& W = m.params[m.params.require(p + ".input")];
    const auto& U = m.params[m.params.require(p + ".recurrent")];
    const auto& b = m.params[m.params.require(p + ".bias")];
    const std::vector<double> x0(x.row(0).begin(), x.row(0).end());
    const auto want =
        reference_step(x0, LstmState{std::vector<double>(h), std::vector<double>(h)}, W, U, b);
    const std::size_t off = p == "lstm_fwd" ? 0 : h;
    for (std::size_t k = 0; k < h; ++k) EXPECT_NEAR(out(0, off + k), want.h[k], 1e-12);
  }
}

TEST(Bilstm, PalindromeWithTiedDirectionsMirrors) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, false));
  for (const char* part : {".input", ".recurrent", ".bias"}) {
    m.params[m.params.require(std::string("lstm_bwd") + part)] =
        m.params[m.params.require(std::string("lstm_fwd") + part)];
  }
  std::mt19937_64 rng(3);
  const std::size_t l = 5, dm = m.config.model_dim, h = dm / 2;
  Tensor2 x(l, dm);
  const auto half = test::random_tensor(3, dm, rng);
  for (std::size_t t = 0; t < l; ++t) {
    const std::size_t src = std::min(t, l - 1 - t);
    std::copy(half.row(src).begin(), half.row(src).end(), x.row(t).begin());
  }
  const auto out = bilstm(x, l, m);
  for (std::size_t t = 0; t < l; ++t)
    for (std::size_t k = 0; k < h; ++k) {
      EXPECT_NEAR(out(t, k), out(l - 1 - t, h + k), 1e-14);
    }
}

TEST(Bilstm, RowsBeyondActiveLengthAreZero) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, false));
  std::mt19937_64 rng(4);
  const auto x = test::random_tensor(7, m.config.model_dim, rng);
  const auto out = bilstm(x, 4, m);
  for (std::size_t t = 4; t < 7; ++t)
    for (double v : out.row(t)) EXPECT_EQ(v, 0.0);
}

TEST(Bilstm, OrderAwareUnlikeTheEmbeddingSum) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, false));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = test::random_tensor(4, m.config.model_dim, rng);
    Tensor2 swapped = x;
    std::swap_ranges(swapped.row(0).begin(), swapped.row(0).end(), swapped.row(3).begin());
    const auto a = bilstm(x, 4, m);
    const auto b = bilstm(swapped, 4, m);
    // Some output row must change (not merely be permuted).
    bool differs = false;
    for (std::size_t k = 0; k < a.cols(); ++k) differs = differs || a(0, k) != b(3, k);
    EXPECT_TRUE(differs);
  }
}

// ---- attention and pooling ----

TEST(Attention, ConstantScorerIsUniform) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::attention, false));
  zero_scorer_weights(m);
  std::mt19937_64 rng(6);
  const auto h = test::random_tensor(6, m.config.model_dim, rng);
  const auto a = attention_weights(h, 4, m);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(a[i], 0.25);
  EXPECT_EQ(a[4], 0.0);
  EXPECT_EQ(a[5], 0.0);
}

TEST(Attention, SingleActivePosition) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::attention, false));
  std::mt19937_64 rng(7);
  const auto a = attention_weights(test::random_tensor(3, m.config.model_dim, rng), 1, m);
  EXPECT_EQ(a, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(Attention, MaskedSoftmaxExample) {
  const std::vector<double> scores = {std::log(2.0), 0.0, 0.0, 99.0};
  const auto a = masked_softmax(scores, 3);
  EXPECT_NEAR(a[0], 0.5, 1e-15);
  EXPECT_NEAR(a[1], 0.25, 1e-15);
  EXPECT_NEAR(a[2], 0.25, 1e-15);
  EXPECT_EQ(a[3], 0.0);
}

TEST(Pool, Examples) {
  const auto h = Tensor2::from_rows({{1, 0}, {0, 2}, {9, 9}});
  EXPECT_EQ(pool(h, {}, 2, PoolingStrategy::sum), (std::vector<double>{1, 2}));
  EXPECT_EQ(pool(h, {}, 2, PoolingStrategy::average), (std::vector<double>{0.5, 1}));
  EXPECT_EQ(pool(h, {}, 2, PoolingStrategy::max), (std::vector<double>{1, 2}));
  const std::vector<double> one_hot = {0, 1};
  EXPECT_EQ(pool(h, one_hot, 2, PoolingStrategy::attention), (std::vector<double>{0, 2}));
  EXPECT_THROW(pool(h, {}, 2, PoolingStrategy::attention), ArgumentError);
}

TEST(Pool, UniformAttentionEqualsAverageAndSumIsAverageTimesLength) {
  std::mt19937_64 rng(8);
  for (std::size_t l = 1; l <= 12; ++l) {
    const auto h = test::random_tensor(l + 2, 5, rng);
    const std::vector<double> uniform(l, 1.0 / static_cast<double>(l));
    EXPECT_EQ(pool(h, uniform, l, PoolingStrategy::attention),
              pool(h, {}, l, PoolingStrategy::average));
    const auto s = pool(h, {}, l, PoolingStrategy::sum);
    const auto a = pool(h, {}, l, PoolingStrategy::average);
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k], a[k] * l, 1e-12);
  }
}

// ---- full forward ----

TEST(DamForward, ContractsAcrossStrategies) {
  std::mt19937_64 rng(9);
  for (auto task : {Task::binary, Task::multiclass}) {
    for (auto pooling : {PoolingStrategy::attention, PoolingStrategy::sum,
                         PoolingStrategy::average, PoolingStrategy::max}) {
      auto m = model_with(test::small_dam_config(task, pooling, true));
      for (int trial = 0; trial < 20; ++trial) {
        const auto doc = test::random_document(m.config.vocab_size, 1 + trial % 9, 10, rng);
        const auto ps = test::random_structured(m.config.structured_dim, rng);
        const auto p = dam_forward(doc, &ps, m);
        if (task == Task::binary) {
          ASSERT_EQ(p.class_scores.size(), 1u);
          EXPECT_GT(p.class_scores[0], 0.0);
          EXPECT_LT(p.class_scores[0], 1.0);
        } else {
          ASSERT_EQ(p.class_scores.size(), 6u);
          EXPECT_NEAR(std::accumulate(p.class_scores.begin(), p.class_scores.end(), 0.0), 1.0,
                      1e-6);
        }
        EXPECT_EQ(p.pooled.size(), m.config.model_dim);
        if (pooling == PoolingStrategy::attention) {
          ASSERT_EQ(p.attention.size(), doc.effective_length);
          EXPECT_NEAR(std::accumulate(p.attention.begin(), p.attention.end(), 0.0), 1.0, 1e-6);
        } else {
          EXPECT_TRUE(p.attention.empty());
        }
        const auto again = dam_forward(doc, &ps, m);
        EXPECT_EQ(again.class_scores, p.class_scores);
        EXPECT_EQ(again.attention, p.attention);
      }
    }
  }
}

TEST(DamForward, ConstantScorerMatchesAveragePoolingBitwise) {
  std::mt19937_64 rng(10);
  auto att = model_with(test::small_dam_config(Task::multiclass, PoolingStrategy::attention, true));
  zero_scorer_weights(att);
  const auto avg = without_scorer(att, PoolingStrategy::average);
  for (int trial = 0; trial < 50; ++trial) {
    const auto doc = test::random_document(att.config.vocab_size, 1 + trial % 10, 12, rng);
    const auto ps = test::random_structured(att.config.structured_dim, rng);
    const auto a = dam_forward(doc, &ps, att);
    const auto b = dam_forward(doc, &ps, avg);
    EXPECT_EQ(a.pooled, b.pooled);
    EXPECT_EQ(a.class_scores, b.class_scores);
  }
}

TEST(DamForward, ExtraPaddingDoesNotChangePredictions) {
  std::mt19937_64 rng(11);
  for (auto pooling : {PoolingStrategy::attention, PoolingStrategy::max}) {
    auto m = model_with(test::small_dam_config(Task::multiclass, pooling, true));
    for (int trial = 0; trial < 20; ++trial) {
      const auto doc = test::random_document(m.config.vocab_size, 1 + trial % 6, 6, rng);
      const auto longer = text::pad_or_crop(doc.active(), 40);
      const auto ps = test::random_structured(m.config.structured_dim, rng);
      const auto a = dam_forward(doc, &ps, m);
      const auto b = dam_forward(longer, &ps, m);
      for (std::size_t c = 0; c < a.class_scores.size(); ++c) {
        EXPECT_NEAR(a.class_scores[c], b.class_scores[c], 1e-9);
      }
    }
  }
}

TEST(DamForward, WideNeedsMatchingStructuredVector) {
  auto m = model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, true));
  std::mt19937_64 rng(12);
  const auto doc = test::random_document(m.config.vocab_size, 3, 5, rng);
  const auto wrong = test::random_structured(m.config.structured_dim + 1, rng);
  EXPECT_THROW(dam_forward(doc, &wrong, m), ShapeError);
  EXPECT_THROW(dam_forward(doc, nullptr, m), ArgumentError);
}

TEST(DamForward, ParameterShapesFollowConfig) {
  auto config = test::small_dam_config(Task::multiclass, PoolingStrategy::attention, true);
  auto m = model_with(config);
  const auto& p = m.params;
  EXPECT_EQ(p[p.require("embedding")].rows(), config.vocab_size);
  EXPECT_EQ(p[p.require("lstm_fwd.recurrent")].rows(), config.model_dim / 2);
  EXPECT_EQ(p[p.require("head1.weight")].rows(), config.model_dim + config.structured_dim);
  EXPECT_EQ(p[p.require("head3.weight")].cols(), 6u);
  EXPECT_EQ(p[p.require("attn_score.weight")].rows(), config.attention_dim);
  EXPECT_FALSE(p.find("attn_score.bias"));
  // forget gate bias is 1, the rest 0
  const auto& b = p[p.require("lstm_fwd.bias")];
  const std::size_t h = config.model_dim / 2;
  for (std::size_t j = 0; j < 4 * h; ++j) EXPECT_EQ(b[j], (j >= h && j < 2 * h) ? 1.0 : 0.0);

  config.model_dim = 7;
  EXPECT_THROW(config.validate(), ArgumentError);
  EXPECT_FALSE(
      model_with(test::small_dam_config(Task::binary, PoolingStrategy::sum, false)).params.find(
          "attn_hidden.weight"));
}

TEST(DamForward, EndToEndGradientCheck) {
  std::mt19937_64 rng(13);
  for (auto task : {Task::binary, Task::multiclass}) {
    for (auto pooling : {PoolingStrategy::attention, PoolingStrategy::sum,
                         PoolingStrategy::average, PoolingStrategy::max}) {
      for (bool wide : {true, false}) {
        const auto config = test::small_dam_config(task, pooling, wide);
        auto draw = [&](std::mt19937_64& g) {
          auto m = model_with(config, g());
          test::scramble(m.params, g);
          const auto doc = test::random_document(config.vocab_size, 3 + g() % 4, 6, g);
          const auto ps = test::random_structured(config.structured_dim, g);
          const int label = static_cast<int>(g() % config.num_classes());
          return std::pair{end_to_end_loss(config, {doc}, {ps}, {label}), m.params};
        };
        const auto check = test::resolved_gradient_check(draw, rng);
        const auto where = to_string(task) + "/" + to_string(pooling) + "/wide=" +
                           std::to_string(wide);
        EXPECT_EQ(check.report.unresolved(), 0u) << where;
        EXPECT_LT(check.report.max_relative_error(), 1e-4) << where;
      }
    }
  }
}

TEST(DamForward, OneVsRestLossAlsoDifferentiates) {
  std::mt19937_64 rng(14);
  auto config = test::small_dam_config(Task::multiclass, PoolingStrategy::attention, true);
  config.multiclass_loss = MulticlassLoss::one_vs_rest;
  auto m = model_with(config);
  test::scramble(m.params, rng);
  std::vector<text::Document> docs = {test::random_document(config.vocab_size, 4, 6, rng)};
  std::vector<text::StructuredVector> ps = {test::random_structured(config.structured_dim, rng)};
  const auto report = numerics::gradient_check(end_to_end_loss(config, docs, ps, {4}), m.params);
  EXPECT_LT(report.max_relative_error(), 1e-4);
}

// ---- prediction and loss ----

TEST(Prediction, TiesGoToLowestIndex) {
  const std::vector<double> tie = {0.1, 0.4, 0.4, 0.1};
  EXPECT_EQ(argmax_lowest(tie), 1);
  EXPECT_EQ(predicted_class_from_scores(tie, Task::multiclass), 1);
  const std::vector<double> half = {0.5};
  EXPECT_EQ(predicted_class_from_scores(half, Task::binary), 0);
  const std::vector<double> above = {0.500001};
  EXPECT_EQ(predicted_class_from_scores(above, Task::binary), 1);
  Prediction p;
  p.class_scores = {0.25};
  EXPECT_EQ(p.probabilities(), (std::vector<double>{0.75, 0.25}));
}

TEST(Loss, Examples) {
  std::vector<Prediction> preds(5);
  std::vector<int> labels = {0, 1, 1, 0, 1};
  for (auto& p : preds) p.class_scores = {0.5};
  EXPECT_NEAR(loss(preds, labels, Task::binary), 5 * std::log(2.0), 1e-12);

  const std::vector<double> p9 = {0.9};
  EXPECT_NEAR(record_loss(p9, 1, Task::binary), 0.105361, 1e-6);
  EXPECT_NEAR(record_loss(p9, 0, Task::binary), -std::log(0.1), 1e-12);

  const std::vector<double> perfect = {0, 0, 1, 0, 0, 0};
  EXPECT_NEAR(record_loss(perfect, 2, Task::multiclass), 0.0, 1e-6);
  // clamp keeps a confident wrong answer finite
  EXPECT_NEAR(record_loss(perfect, 3, Task::multiclass), -std::log(1e-7), 1e-9);
}

TEST(Loss, OneVsRestSumsEveryClass) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.1, 0.2, 0.1};
  double want = -std::log(0.3);
  for (std::size_t c = 0; c < p.size(); ++c)
    if (c != 2) want -= std::log(1.0 - p[c]);
  EXPECT_NEAR(record_loss(p, 2, Task::multiclass, MulticlassLoss::one_vs_rest), want, 1e-12);
}

TEST(Loss, LabelOutOfRange) {
  const std::vector<double> p = {0.5};
  EXPECT_THROW(record_loss(p, 2, Task::binary), ArgumentError);
  const std::vector<double> q(6, 1.0 / 6);
  EXPECT_THROW(record_loss(q, 6, Task::multiclass), ArgumentError);
  EXPECT_THROW(record_loss(q, -1, Task::multiclass), ArgumentError);
}

TEST(Config, NamesRoundTrip) {
  for (auto k : {ModelKind::dam, ModelKind::logreg_structured, ModelKind::mlp_structured,
                 ModelKind::embd_text})
    EXPECT_EQ(parse_model_kind(to_string(k)), k);
  for (auto p : {PoolingStrategy::attention, PoolingStrategy::sum, PoolingStrategy::average,
                 PoolingStrategy::max})
    EXPECT_EQ(parse_pooling(to_string(p)), p);
  EXPECT_EQ(parse_pooling("avg"), PoolingStrategy::average);
  EXPECT_THROW(parse_pooling("mean-ish"), ArgumentError);
  EXPECT_THROW(parse_task("ternary"), ArgumentError);
}
