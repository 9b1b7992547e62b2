// Copyright 2026 The abp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABP_SERIALIZE_HPP_
#define ABP_SERIALIZE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "abp/decomposition.hpp"
#include "abp/lattice.hpp"
#include "abp/montecarlo.hpp"

namespace abp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Text form: a line "window a b c d", then one "m n" line per occupied
/// site. Blank lines and lines starting with '#' are ignored.
void write_configuration(std::ostream& out, const Configuration& c);
Configuration read_configuration(std::istream& in);

Json to_json(const Rect& r);
Rect rect_from_json(const Json& j);
Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);
Json to_json(const decomposition::Hierarchy& h);
Json to_json(const montecarlo::Estimate& e);

/// Formats with 17 significant digits; infinities print as "inf"/"-inf".
std::string format_real(double v);

/// "event,p,dims,trials,p_hat,ci_low,ci_high,seed"
std::string estimate_csv_header();
std::string estimate_csv_row(const montecarlo::Estimate& e);

/// "WxH" in sites, with "@a,c" when the origin is not (0,0).
std::string format_dims(const Rect& r);

/// Parses "WxH[@a,c]": W columns and H rows with lower-left corner (a,c).
/// Throws std::invalid_argument on malformed input.
Rect parse_rect(const std::string& text);

}  // namespace abp

#endif  // ABP_SERIALIZE_HPP_
