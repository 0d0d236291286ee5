#include "enaqt/version.hpp"

namespace enaqt {

std::string_view version() noexcept { return ENAQT_VERSION_STRING; }

}  // namespace enaqt
