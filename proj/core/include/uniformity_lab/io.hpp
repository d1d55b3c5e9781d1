#pragma once

// JSON readers and writers for the on-disk formats shared by the library
// and the command-line tool.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "uniformity_lab/funcspace.hpp"
#include "uniformity_lab/localfn.hpp"

namespace ulab {

/// Raised for unreadable files and malformed content.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// [{"x": int, "re": real, "im": real}, ...]; "im" may be omitted.
FiniteFunction function_from_json(const std::string& text, bool one_bounded = false);
std::string function_to_json(const FiniteFunction& f);

/// Same record format as functions; weights must be real and nonnegative.
ProbKernel kernel_from_json(const std::string& text);
std::string kernel_to_json(const ProbKernel& k);

/// JSON array of integers; duplicates are rejected, output is sorted.
std::vector<std::int64_t> set_from_json(const std::string& text);
std::string set_to_json(const std::vector<std::int64_t>& set);

/// {"M": int, "q": int, "anchor": int, "entries": [{"cell", "residue", "re", "im"}]}.
LocalFunction local_from_json(const std::string& text);
std::string local_to_json(const LocalFunction& phi);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

FiniteFunction load_function(const std::filesystem::path& path, bool one_bounded = false);
ProbKernel load_kernel(const std::filesystem::path& path);
std::vector<std::int64_t> load_set(const std::filesystem::path& path);
LocalFunction load_local(const std::filesystem::path& path);

}  // namespace ulab
