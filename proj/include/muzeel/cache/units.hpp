#pragma once

#include <string>
#include <vector>

#include "muzeel/cache/snapshot.hpp"

namespace muzeel::cache {

// One rewritable JavaScript unit of a resource: a whole .js body, or one
// inline <script> block of an HTML body. Inline blocks are pseudo-files
// named "<local_path>#inline:<n>" with lines counted from the block start.
struct JsUnit {
  std::string file_name;
  std::string text;
  size_t begin = 0;  // byte range within the resource body
  size_t end = 0;
};

// Extracts the units of an eligible resource body. For HTML, only inline
// scripts with no src and a JavaScript (or unspecified) type qualify.
std::vector<JsUnit> extract_units(const ResourceEntry& entry, const std::string& body);

// Splices rewritten unit texts back into the resource body. Units must come
// from extract_units on this body, in order.
std::string splice_units(const std::string& body, const std::vector<JsUnit>& units,
                         const std::vector<std::string>& rewritten_texts);

}  // namespace muzeel::cache
