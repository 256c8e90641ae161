#include "quench/strategy.hpp"

#include "quench/errors.hpp"

namespace quench {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Lin: return "lin";
        case Strategy::Geo: return "geo";
        case Strategy::GeoJump: return "geojump";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "lin" || name == "linear") return Strategy::Lin;
    if (name == "geo" || name == "geodesic") return Strategy::Geo;
    if (name == "geojump" || name == "geo-jump") return Strategy::GeoJump;
    throw ValidationError("unknown strategy '" + std::string(name) + "' (expected lin, geo or geojump)");
}

}  // namespace quench
