#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "coversys/arith.hpp"
#include "coversys/census.hpp"
#include "coversys/cover.hpp"
#include "coversys/frames.hpp"
#include "coversys/space.hpp"
#include "coversys/structure.hpp"

namespace coversys {

using Json = nlohmann::ordered_json;

/// Malformed input, with a location when one is known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 15 significant digits.
std::string format_double(double x);
/// "p/q", or "p" for integers.
std::string format_rational(const Rational& r);

/// Two-space indented, floats at 15 significant digits.
std::string dump_json(const Json& j);

/// {"2": 2, "3": 1}.
Json to_json(const FactoredModulus& n);
/// Accepts an object, an integer or a "2^2*3" string.
FactoredModulus factored_from_json(const Json& j, const std::string& where);

/// [1, "*", 2].
Json to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const Json& j, const std::string& where);

/// {"a": 1, "d": {"2": 1}}.
Json to_json(const Progression& p);
Progression progression_from_json(const Json& j, const std::string& where);

Json to_json(CoordSet s);
Json point_json(const Point& x);

/// {"progressions": [...]} for integer views, {"space": [...], "planes": [...]} otherwise.
Json to_json(const CoverSystem& c);
CoverSystem system_from_json(const Json& j);

/// Parse errors carry line and column.
Json parse_json(std::istream& in, const std::string& source);
CoverSystem read_system(std::istream& in, const std::string& source);

Json to_json(const ExplorationTree& t);
Json to_json(const TreeFrame& f);
Json to_json(const GeneralizedFrameReport& r);
Json to_json(const CensusRecord& r);

}  // namespace coversys
