#include "pmod/cli/graph_source.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "pmod/generators.hpp"

namespace pmod::cli {

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InputError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Graph generate(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("generator spec needs gen:KIND:ARGS, got 'gen:" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::vector<std::string_view> args = split(spec.substr(colon + 1), ',');
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw InputError("generator '" + std::string(kind) + "' takes " + std::to_string(count) + " argument(s)");
    }
  };
  auto size_arg = [&](std::size_t i) { return parse_number<std::size_t>(args[i], "generator argument"); };

  try {
    if (kind == "path") {
      expect(1);
      return path_graph(size_arg(0));
    }
    if (kind == "cycle") {
      expect(1);
      return cycle_graph(size_arg(0));
    }
    if (kind == "complete") {
      expect(1);
      return complete_graph(size_arg(0));
    }
    if (kind == "grid") {
      expect(1);
      return grid_graph(size_arg(0));
    }
    if (kind == "parallel") {
      expect(2);
      return parallel_paths(size_arg(0), size_arg(1));
    }
    if (kind == "er") {
      expect(3);
      return erdos_renyi_connected(size_arg(0), parse_number<double>(args[1], "degree"),
                                   parse_number<std::uint64_t>(args[2], "seed"));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown generator '" + std::string(kind) + "'");
}

}  // namespace

Graph grid_graph(std::size_t n) {
  if (n == 0) throw InputError("grid size must be positive");
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  labels.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      labels.push_back(std::to_string(r) + "," + std::to_string(c));
      const std::size_t v = r * n + c;
      if (c + 1 < n) edges.push_back({v, v + 1});
      if (r + 1 < n) edges.push_back({v, v + n});
    }
  }
  return Graph(n * n, std::move(edges), std::move(labels));
}

Graph load_graph(const std::string& source) {
  if (source.starts_with("gen:")) return generate(std::string_view(source).substr(4));
  return parse_graph(read_text_file(source));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path output_path(const std::string& path) {
  std::filesystem::path out(path);
  if (out.is_relative()) {
    if (const char* dir = std::getenv("PMOD_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      out = std::filesystem::path(dir) / out;
    }
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view text) {
  const std::filesystem::path out = output_path(path);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  std::ofstream file(out, std::ios::binary);
  if (!file) throw InputError("cannot write '" + out.string() + "'");
  file << text;
  if (!file) throw InputError("failed writing '" + out.string() + "'");
}

}  // namespace pmod::cli
