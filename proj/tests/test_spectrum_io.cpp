// Copyright 2026 The fourport Authors
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

#include "reference.hpp"

namespace fp = fourport;
using fp::Mat2;

namespace {

const char *kIdentityBin = R"({"bins":[{"omega":1.0,"width":0.1,
  "T":[[[1,0],[0,0]],[[0,0],[1,0]]],
  "A":[[[0,0],[0,0]],[[0,0],[0,0]]]}]})";

const char *kScaledBin = R"({"bins":[{"omega":2.0,"width":0.1,
  "T":[[[1.4142135623730951,0],[0,0]],[[0,0],[0.7071067811865476,0]]],
  "A":[[[1.4142135623730951,0],[0,0]],[[0,0],[0.7071067811865476,0]]]}]})";

fp::ErrorCode code_of(const std::string &text, const fp::LoadOptions &opts = {}) {
    try {
        fp::parse_spectrum(text, opts);
    } catch (const fp::Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return fp::ErrorCode::ParseError;
}

}  // namespace

TEST(SpectrumIo, OneBinIdentity) {
    const auto s = fp::parse_spectrum(kIdentityBin);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.bins[0].omega, 1.0);
    EXPECT_LE(fp::reference::diff(s.bins[0].matrices.T, Mat2::Identity()), 0.0);
    EXPECT_FALSE(s.bins[0].renormalization.has_value());
}

TEST(SpectrumIo, RenormalizesDiagonalCommutator) {
    EXPECT_EQ(code_of(kScaledBin), fp::ErrorCode::ValidationError);
    const auto s = fp::parse_spectrum(kScaledBin, {fp::kDefaultTolerance, true});
    ASSERT_TRUE(s.bins[0].renormalization.has_value());
    EXPECT_NEAR(s.bins[0].renormalization->lambdas[0], 4.0, 1e-12);
    EXPECT_NEAR(s.bins[0].renormalization->lambdas[1], 1.0, 1e-12);
    EXPECT_TRUE(fp::validate(s.bins[0].matrices, 1e-12).pass);
}

TEST(SpectrumIo, MalformedJsonReportsPosition) {
    try {
        fp::parse_spectrum("{\"bins\": [\n  {\"omega\": 1.0,, }]}");
        FAIL();
    } catch (const fp::Error &e) {
        EXPECT_EQ(e.code(), fp::ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(SpectrumIo, StructuralErrors) {
    EXPECT_EQ(code_of("[]"), fp::ErrorCode::ParseError);
    EXPECT_EQ(code_of(R"({"bins":[{"omega":1,"width":1,"T":[[1,0]],"A":[]}]})"), fp::ErrorCode::ParseError);
    EXPECT_EQ(code_of(R"({"bins":[{"width":1}]})"), fp::ErrorCode::ParseError);
}

TEST(SpectrumIo, ValidationErrorNamesOmega) {
    std::string text = kIdentityBin;
    text.replace(text.find("[[0,0],[0,0]],[[0,0],[0,0]]"), 27, "[[0.316227766,0],[0,0]],[[0,0],[0,0]]");
    try {
        fp::parse_spectrum(text);
        FAIL();
    } catch (const fp::Error &e) {
        EXPECT_EQ(e.code(), fp::ErrorCode::ValidationError);
        EXPECT_NE(std::string(e.what()).find("omega=1"), std::string::npos) << e.what();
    }
    fp::LoadOptions lenient;
    lenient.validate_bins = false;
    EXPECT_EQ(fp::parse_spectrum(text, lenient).size(), 1u);
}

TEST(SpectrumIo, OrderingAndWidth) {
    const std::string bin = R"({"omega":%W,"width":%D,"T":[[[1,0],[0,0]],[[0,0],[1,0]]],"A":[[[0,0],[0,0]],[[0,0],[0,0]]]})";
    auto make = [&](double omega, double width) {
        std::string b = bin;
        b.replace(b.find("%W"), 2, std::to_string(omega));
        b.replace(b.find("%D"), 2, std::to_string(width));
        return b;
    };
    EXPECT_EQ(code_of("{\"bins\":[" + make(2, 1) + "," + make(1, 1) + "]}"), fp::ErrorCode::ValidationError);
    EXPECT_EQ(code_of("{\"bins\":[" + make(1, 0) + "]}"), fp::ErrorCode::ValidationError);
    EXPECT_EQ(fp::parse_spectrum("{\"bins\":[" + make(1, 1) + "," + make(2, 1) + "]}").size(), 2u);
}

TEST(SpectrumIo, RoundTrip) {
    fp::DeviceSampler s(31);
    fp::DeviceSpectrum spectrum;
    for (int i = 0; i < 4; ++i) spectrum.bins.push_back({1.0 + i, 0.25, s.device(), {}});
    const auto back = fp::parse_spectrum(fp::spectrum_to_json(spectrum).dump(), {1e-12, false});
    ASSERT_EQ(back.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(back.bins[i].matrices.T, spectrum.bins[i].matrices.T);
        EXPECT_EQ(back.bins[i].matrices.A, spectrum.bins[i].matrices.A);
    }
}

TEST(SpectrumIo, MissingFile) {
    EXPECT_THROW(fp::load_spectrum("/nonexistent/spectrum.json"), fp::Error);
}
