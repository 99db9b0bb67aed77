#pragma once

namespace magshift {

// Direction of the external magnetic field relative to the surface:
// Perp = field normal to the surface, Para = field parallel to it.
enum class Orientation { Perp, Para };

inline const char* to_string(Orientation o) {
  return o == Orientation::Perp ? "perp" : "para";
}

}  // namespace magshift
