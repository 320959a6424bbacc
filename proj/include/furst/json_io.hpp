#pragma once

#include <json.hpp>

#include "furst/alpha.hpp"
#include "furst/digits.hpp"
#include "furst/harmonics.hpp"
#include "furst/netgen.hpp"
#include "furst/pipeline.hpp"
#include "furst/sunits.hpp"

namespace furst::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Every number crosses the boundary as a decimal string.
std::string num(double x);
std::string num(std::uint64_t x);
Json str(const BigInt& x);
Json str(const Rational& x);
Json str(const RationalInterval& x);

// Lenient readers: accept a JSON number or a decimal string.
BigInt get_bigint(const nlohmann::json& j);
Rational get_rational(const nlohmann::json& j);
double get_double(const nlohmann::json& j);
std::uint64_t get_u64(const nlohmann::json& j);

Json to_json(const sunits::SUnit& x);
Json to_json(const sunits::GapReport& r);
Json to_json(const netgen::NetReport& r, bool emit_points);
Json to_json(const netgen::DigitSet& ds);
netgen::DigitSet digit_set_from_json(const nlohmann::json& j);
Json to_json(const netgen::Lemma2Record& r);
Json to_json(const digits::Stratum& st);
Json to_json(const digits::SearchResult& r);
Json to_json(const digits::YSet& y);
Json to_json(const harmonics::SubgroupDescriptor& d);
Json to_json(const harmonics::ExpSumValue& v);
Json to_json(const harmonics::Lemma5Scan& s);
Json to_json(const harmonics::Lemma6Record& r);
Json to_json(const harmonics::Lemma7Record& r, bool emit_profile);
Json to_json(const harmonics::Lemma8Result& r);
Json to_json(const alpha::Convergent& c);
Json to_json(const alpha::DirichletPair& d);
Json to_json(const alpha::PsiWitness& w);
Json to_json(const alpha::BakerProbe& p);
Json to_json(const pipeline::PipelineConfig& c);
pipeline::PipelineConfig config_from_json(const nlohmann::json& j);
Json to_json(const pipeline::PipelineReport& r, bool emit_points);
Json to_json(const pipeline::SolveResult& r);
Json to_json(const pipeline::UniformReport& r);
Json to_json(const pipeline::DensityReport& r);

/// {"schema": 1, ...payload}
Json envelope(const std::string& kind, Json payload);

}  // namespace furst::io
