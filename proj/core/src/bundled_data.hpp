#pragma once

#include <cstdint>
#include <span>

namespace dpdlogit::detail {

struct BundledFile {
  const char* name;
  const char* text;
  std::uint64_t checksum;
};

std::span<const BundledFile> bundled_files();

}  // namespace dpdlogit::detail
