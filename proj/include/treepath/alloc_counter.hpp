#pragma once

// Process-wide heap accounting. Linking src/alloc_counter.cpp replaces the
// global operator new/delete with counting versions.

#include <cstddef>

namespace treepath::alloc {

std::size_t current_bytes();
std::size_t peak_bytes();
// Restarts the high-water mark from the current live size.
void reset_peak();

}  // namespace treepath::alloc
