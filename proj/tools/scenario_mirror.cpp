// Writes the JSON mirror of each TOML scenario: <dir>/*.toml -> <dir>/json/*.json
#include <filesystem>
#include <fstream>
#include <iostream>

#include "conductor/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    fs::path dir = argc > 1 ? argv[1] : "corpus";
    fs::create_directories(dir / "json");
    try {
        for (auto& e : fs::directory_iterator(dir)) {
            if (e.path().extension() != ".toml") continue;
            auto doc = conductor::read_document(e.path().string());
            fs::path out = dir / "json" / (e.path().stem().string() + ".json");
            std::ofstream(out) << doc.dump(2) << "\n";
            std::cout << e.path().string() << " -> " << out.string() << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return 3;
    }
    return 0;
}
