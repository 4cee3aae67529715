#pragma once

#include <string>
#include <string_view>

namespace mailmine {

// English (Porter2 / Snowball) stemmer. Input is treated case-insensitively;
// output is lowercase. Words of one or two letters are returned unchanged.
std::string porter2_stem(std::string_view word);

} // namespace mailmine
