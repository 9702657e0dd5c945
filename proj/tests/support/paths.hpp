#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace muzeel::test {

std::filesystem::path data_dir();
std::filesystem::path corpus_dir();

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// All .js corpus files, name -> content, sorted by name.
std::map<std::string, std::string> load_corpus();

}  // namespace muzeel::test
