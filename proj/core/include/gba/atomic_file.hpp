#pragma once

#include <filesystem>
#include <string_view>

namespace gba {

/// Writes `content` to a sibling temporary file, then renames it over
/// `path`, so readers never see a partial file. Throws Error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace gba
