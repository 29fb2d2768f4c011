#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace gzsl {

using Json = nlohmann::json;

// One JSON object per non-blank line. Parse failures report the line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with sorted keys; output is byte-stable for equal inputs.
void write_json_file(const std::filesystem::path& path, const Json& value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace gzsl
