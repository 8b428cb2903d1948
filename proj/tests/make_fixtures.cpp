// Writes the small step-edge corpus used by the CLI smoke test.
// Usage: make_fixtures <dir>  -- creates <dir>/in and <dir>/gt

#include <filesystem>
#include <iostream>
#include <string>

#include "statedge/imgio.hpp"

namespace fs = std::filesystem;
using namespace statedge;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <dir>\n";
        return 2;
    }
    const fs::path root(argv[1]);
    fs::create_directories(root / "in");
    fs::create_directories(root / "gt");

    for (int i = 1; i <= 2; ++i) {
        const int step = 20 + 10 * i;
        RasterImage img(64, 64, 1, 0.0);
        EdgeMap gt(64, 64);
        for (int y = 0; y < 64; ++y) {
            for (int x = step; x < 64; ++x) img.at(x, y) = 255.0;
            gt.set(step - 1, y, true);
        }
        const std::string stem = "img" + std::to_string(i);
        write_image((root / "in" / (stem + ".pgm")).string(), img);
        write_edge_map((root / "gt" / (stem + ".pgm")).string(), gt);
    }
    return 0;
}
