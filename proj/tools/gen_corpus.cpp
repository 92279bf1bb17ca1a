// Writes the corpus of .web files used by the acceptance suite and shipped
// with the repository. Deterministic: rerunning into a fresh directory
// reproduces the checked-in corpus byte for byte.

#include "moyweb/builders.hpp"
#include "moyweb/web_diagram.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

using namespace moyweb;
namespace fs = std::filesystem;

namespace {

int files_written = 0;

void emit(const fs::path& dir, const std::string& name, const WebDiagram& w) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    out << serialize(w);
    ++files_written;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_corpus <output-dir>\n";
        return 1;
    }
    const fs::path root = argv[1];

    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k)
            emit(root, "circle-N" + std::to_string(n) + "-k" + std::to_string(k) + ".web",
                 circle(k, n));
    emit(root, "circle-N3-k0.web", circle(0, 3));
    emit(root, "circle-cw-N3-k1.web", circle(1, 3, false));
    emit(root, "circle-cw-N4-k2.web", circle(2, 4, false));
    emit(root, "circle-cw-N4-k3.web", circle(3, 4, false));

    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m < n; ++m)
            for (int k = 1; m + k <= n; ++k)
                emit(root,
                     "theta-N" + std::to_string(n) + "-m" + std::to_string(m) + "-k" +
                         std::to_string(k) + ".web",
                     theta(m, k, n));

    const int assoc_tuples[][4] = {{1, 1, 1, 3}, {1, 1, 2, 4}, {1, 2, 1, 4}, {2, 1, 1, 4}};
    for (const auto& t : assoc_tuples) {
        std::string suffix = "-i" + std::to_string(t[0]) + "j" + std::to_string(t[1]) + "k" +
                             std::to_string(t[2]) + "-N" + std::to_string(t[3]) + ".web";
        emit(root, "assoc-left" + suffix, assoc_tree_left(t[0], t[1], t[2], t[3]));
        emit(root, "assoc-right" + suffix, assoc_tree_right(t[0], t[1], t[2], t[3]));
    }

    const int digon_tuples[][3] = {{1, 1, 2}, {1, 2, 3}, {2, 1, 3}, {2, 2, 4}};
    for (const auto& t : digon_tuples)
        emit(root,
             "digon-m" + std::to_string(t[0]) + "-k" + std::to_string(t[1]) + "-N" +
                 std::to_string(t[2]) + ".web",
             digon(t[0], t[1], t[2]));
    const int digret_tuples[][3] = {{1, 1, 2}, {1, 1, 3}, {2, 1, 4}};
    for (const auto& t : digret_tuples)
        emit(root,
             "digon-return-m" + std::to_string(t[0]) + "-k" + std::to_string(t[1]) + "-N" +
                 std::to_string(t[2]) + ".web",
             digon_return(t[0], t[1], t[2]));

    emit(root, "square5-m1-N3.web", square_mixed(1, 3));
    emit(root, "square5-m2-N4.web", square_mixed(2, 4));
    emit(root, "doubley5-m1-N3.web", double_y_mixed(1, 3));
    emit(root, "doubley5-m2-N4.web", double_y_mixed(2, 4));
    emit(root, "square6-m1-n0-l1-N2.web", square_up(1, 0, 1, 2));
    emit(root, "square6-m2-n1-l1-N4.web", square_up(2, 1, 1, 4));
    emit(root, "square7-m1-n1-l1-k1-N4.web", square_grid(1, 1, 1, 1, 4));
    emit(root, "square7flip-m1-n1-l1-j0-N4.web", square_grid_flip(1, 1, 1, 0, 4));
    emit(root, "sqclosed-n1-l1-k1-N3.web", closed_square(1, 1, 1, 3));
    emit(root, "sqclosed-n1-l1-k1-N4.web", closed_square(1, 1, 1, 4));

    // Webs carrying 0- or N-labeled edges, for the deletion invariance check.
    emit(root / "trivial", "theta-pad0-m1-N2.web", theta(1, 0, 2));
    emit(root / "trivial", "theta-pad0-m2-N3.web", theta(2, 0, 3));
    emit(root / "trivial", "theta-outerN-N2.web", theta(1, 1, 2));
    emit(root / "trivial", "theta-outerN-N3.web", theta(1, 2, 3));
    emit(root / "trivial", "theta-outerN-N4.web", theta(2, 2, 4));
    emit(root / "trivial", "union-pad-N3.web", disjoint_union(theta(1, 0, 3), circle(3, 3)));

    const auto randoms = random_closed_diagrams(9001, 50, 4);
    for (size_t i = 0; i < randoms.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "rand-%02zu.web", i);
        emit(root / "random", name, randoms[i]);
    }

    std::cout << files_written << " corpus files written to " << root << "\n";
    return 0;
}
