#pragma once

#include <string>
#include <string_view>

namespace enaqt {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's bytes; throws DataIntegrityError when the file cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace enaqt
