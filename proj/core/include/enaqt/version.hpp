#pragma once

#include <string_view>

namespace enaqt {

std::string_view version() noexcept;

}  // namespace enaqt
