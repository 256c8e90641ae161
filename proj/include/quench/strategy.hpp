#pragma once

#include <string>
#include <string_view>

namespace quench {

enum class Strategy { Lin, Geo, GeoJump };

std::string_view to_string(Strategy s);
/// Accepts "lin", "geo", "geojump" (also "geo-jump"). Throws ValidationError.
Strategy parse_strategy(std::string_view name);

}  // namespace quench
