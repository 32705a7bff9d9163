#pragma once

namespace casimir_qse {
inline constexpr const char* version = "0.1.0";
}
