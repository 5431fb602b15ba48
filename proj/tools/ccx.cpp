#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ccx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ccx::CliResult result = ccx::run_cli(args);

  std::cerr << result.table;
  std::cout << result.record;

  if (!result.out_dir.empty() && result.exit_code != 1) {
    std::error_code ec;
    std::filesystem::create_directories(result.out_dir, ec);
    if (ec) {
      std::cerr << "cannot create output directory '" << result.out_dir << "': " << ec.message()
                << "\n";
      return 1;
    }
    auto write = [&](const std::string& name, const std::string& text) {
      std::filesystem::path path = std::filesystem::path(result.out_dir) / name;
      std::ofstream out(path, std::ios::binary);
      out << text;
      if (!out) {
        std::cerr << "cannot write '" << path.string() << "'\n";
        return false;
      }
      return true;
    };
    if (!write("record.json", result.record)) return 1;
    for (const auto& [name, text] : result.artifacts)
      if (!write(name, text)) return 1;
  }
  return result.exit_code;
}
