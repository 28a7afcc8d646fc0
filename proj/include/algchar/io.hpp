#pragma once

// JSON documents (algebra specs, characters, Irr sets, per-lambda results) and a
// content-addressed on-disk cache. All output is deterministic: object keys are
// sorted and numbers that can exceed 64 bits are written as decimal strings.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "algchar/analysis.hpp"
#include "algchar/charfun.hpp"
#include "algchar/oracle.hpp"

namespace algchar {

using Json = nlohmann::json;

inline constexpr const char* kAlgebraSchema = "algchar.algebra/1";
inline constexpr const char* kResultSchema = "algchar.result/1";
inline constexpr const char* kToolVersion = "1.0.0";

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json algebra_to_json(const Algebra& alg);
/// ValidationError naming the offending JSON pointer on malformed input.
Algebra algebra_from_json(const Json& j);
Algebra load_algebra(const std::filesystem::path& path);

/// [p, ["num/den", ...]] with p-1 coefficients on 1, zeta, ..., zeta^(p-2).
Json cyclo_to_json(const Cyclo& c);
Cyclo cyclo_from_json(const Json& j);

Json class_function_to_json(const ClassFunction& f);
ClassFunction class_function_from_json(const Algebra& alg, const Json& j);

Json irrset_to_json(const IrrSet& irr);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string fingerprint(const Json& j);
std::string algebra_fingerprint(const Algebra& alg);

/// q^e as an exact decimal string.
std::string power_string(unsigned q, std::size_t e);

Json sizes_to_json(const LambdaSizes& z, unsigned q);
Json count_to_json(const ConstituentCount& c, std::size_t ut_n = 0);

Json checkpoint_to_json(const PartitionCheckpoint& c);
PartitionCheckpoint checkpoint_from_json(const Json& j);

/// Directory of JSON artifacts addressed by (kind, key).
class Cache {
 public:
  explicit Cache(std::filesystem::path root) : root_(std::move(root)) {}

  /// Root from the ALGCHAR_CACHE environment variable, if set.
  static std::optional<std::filesystem::path> root_from_environment();

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path_of(const std::string& kind, const std::string& key) const;
  std::optional<Json> load(const std::string& kind, const std::string& key) const;
  /// Written to a temporary file and renamed, so readers never see partial files.
  void store(const std::string& kind, const std::string& key, const Json& value) const;
  void erase(const std::string& kind, const std::string& key) const;

 private:
  std::filesystem::path root_;
};

}  // namespace algchar
