#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pmod/graph.hpp"

namespace pmod::cli {

/// Bad user input: unreadable file, malformed argument value.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// n x n grid, nodes labeled "r,c" in row-major order, joined to their
/// horizontal and vertical neighbors.
Graph grid_graph(std::size_t n);

/// Either a path to an edge-list / JSON file or a generator spec:
///   gen:path:N  gen:cycle:N  gen:complete:N  gen:grid:N
///   gen:parallel:K,L  gen:er:N,DEGREE,SEED
Graph load_graph(const std::string& source);

std::string read_text_file(const std::filesystem::path& path);

/// Relative paths land under $PMOD_OUTPUT_DIR when it is set.
std::filesystem::path output_path(const std::string& path);

/// Writes `text` to `path` (via output_path), creating parent directories.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace pmod::cli
