// Copyright 2026 The pgc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "pgc/cnot_layer.hpp"
#include "test_util.hpp"

namespace pgc {
namespace {

using testing::Rng;
using Word = std::vector<std::pair<QubitId, QubitId>>;

Word random_word(Rng& rng, std::uint32_t n, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    const QubitId c = static_cast<QubitId>(rng() % n);
    QubitId t = static_cast<QubitId>(rng() % n);
    while (t == c) t = static_cast<QubitId>(rng() % n);
    w.emplace_back(c, t);
  }
  return w;
}

/// Dense CNOT word, each CNOT from the canonical oracle.
MatX word_matrix(const Word& w, std::uint32_t n) {
  MatX u = MatX::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& [c, t] : w) u = testing::oracle_gcnot(Pauli::Z, c, Pauli::X, t, n) * u;
  return u;
}

QubitSet bits_of(std::size_t x, std::uint32_t n) {
  QubitSet s;
  for (std::uint32_t q = 0; q < n; ++q) {
    if ((x >> q) & 1) s.insert(q);
  }
  return s;
}

std::size_t index_of(const QubitSet& s) {
  std::size_t x = 0;
  for (QubitId q : s.to_vector()) x |= std::size_t{1} << q;
  return x;
}

TEST(BitMatrix, IdentityAndInverse) {
  const BitMatrix i = BitMatrix::identity(4);
  EXPECT_TRUE(i.invertible());
  EXPECT_EQ(i.inverse(), i);
  BitMatrix s(3);  // rank 2
  s.set(0, 0, true);
  s.set(1, 1, true);
  s.set(2, 0, true);
  s.set(2, 1, true);
  EXPECT_FALSE(s.invertible());
  EXPECT_THROW(s.inverse(), CircuitError);
}

TEST(BitMatrix, ProductAndTranspose) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 8);
    const BitMatrix a = CnotLayer::from_word(n, random_word(rng, n, 12)).matrix();
    const BitMatrix b = CnotLayer::from_word(n, random_word(rng, n, 12)).matrix();
    ASSERT_EQ((a * b).transpose(), b.transpose() * a.transpose());
    ASSERT_EQ(a * a.inverse(), BitMatrix::identity(n));
    const QubitSet v = bits_of(rng() % (std::size_t{1} << n), n);
    ASSERT_EQ((a * b).apply(v), a.apply(b.apply(v)));
  }
}

TEST(CnotLayer, MatrixMatchesDensePermutation) {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 4);
    const Word w = random_word(rng, n, static_cast<int>(rng() % 10));
    const CnotLayer layer = CnotLayer::from_word(n, w);
    const MatX u = word_matrix(w, n);
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
      const std::size_t y = index_of(layer.matrix().apply(bits_of(x, n)));
      ASSERT_NEAR(std::abs(u(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x))), 1.0, 1e-12);
    }
  }
}

TEST(CnotLayer, WordRealizesMatrix) {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 12);
    if (n < 2) continue;
    const CnotLayer layer = CnotLayer::from_word(n, random_word(rng, n, 30));
    const CnotLayer rebuilt = CnotLayer::from_word(n, layer.word());
    ASSERT_EQ(rebuilt, layer);
    ASSERT_EQ(CnotLayer::from_matrix(layer.matrix()), layer);
  }
  EXPECT_TRUE(CnotLayer(3).word().empty());
}

TEST(CnotLayer, AppendPrependThenInverse) {
  Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 6);
    const Word w1 = random_word(rng, n, 6), w2 = random_word(rng, n, 6);
    CnotLayer a = CnotLayer::from_word(n, w1);
    const CnotLayer b = CnotLayer::from_word(n, w2);
    Word joined = w1;
    joined.insert(joined.end(), w2.begin(), w2.end());
    ASSERT_EQ(a.then(b), CnotLayer::from_word(n, joined));
    ASSERT_TRUE(a.then(a.inverse()).is_identity());
    CnotLayer app = a, pre = a;
    app.append(w2[0].first, w2[0].second);
    pre.prepend(w2[0].first, w2[0].second);
    Word wa = w1, wp{w2[0]};
    wa.push_back(w2[0]);
    wp.insert(wp.end(), w1.begin(), w1.end());
    ASSERT_EQ(app, CnotLayer::from_word(n, wa));
    ASSERT_EQ(pre, CnotLayer::from_word(n, wp));
  }
}

TEST(CnotLayer, GatesMatchWordUnitary) {
  Rng rng(45);
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 4);
    const Word w = random_word(rng, n, 8);
    Circuit c;
    c.num_qubits = n;
    c.gates = CnotLayer::from_word(n, w).gates();
    ASSERT_LT(testing::max_abs_diff(to_unitary(c), word_matrix(w, n)), 1e-12);
  }
}

TEST(CnotLayer, ConjugatesGadgetsAndFrames) {
  Rng rng(46);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 4);
    const Word w = random_word(rng, n, 6);
    const CnotLayer layer = CnotLayer::from_word(n, w);
    const MatX u = word_matrix(w, n);

    std::vector<QubitId> sup;
    while (sup.empty()) {
      for (QubitId q = 0; q < n; ++q) {
        if (rng() % 2) sup.push_back(q);
      }
    }
    const Pauli axis = rng() % 2 ? Pauli::Z : Pauli::X;
    const double alpha = std::uniform_real_distribution<double>(-1, 1)(rng);
    const PhaseGadget g2 = layer.conjugate(PhaseGadget{axis, alpha, QubitSet(sup)});
    ASSERT_EQ(g2.axis, axis);
    const MatX want = u * testing::oracle_gadget(axis, alpha, sup, n) * u.adjoint();
    ASSERT_LT(testing::max_abs_diff(want, testing::oracle_gadget(axis, alpha, g2.support.to_vector(), n)), 1e-10);

    PauliFrame f;
    for (QubitId q = 0; q < n; ++q) {
      if (rng() % 2) f.x.insert(q);
      if (rng() % 2) f.z.insert(q);
    }
    const PauliFrame f2 = layer.conjugate(f);
    auto frame_matrix = [n](const PauliFrame& p) {
      Circuit c;
      c.num_qubits = n;
      c.gates = p.gates();
      return to_unitary(c);
    };
    ASSERT_LT(testing::oracle_phase_distance(u * frame_matrix(f) * u.adjoint(), frame_matrix(f2)), 1e-10);
  }
}

}  // namespace
}  // namespace pgc
