#pragma once

// Shared test utilities: corpus access and the brute-force cabling oracle for
// the writhe.

#include "moyweb/builders.hpp"
#include "moyweb/web_diagram.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

using namespace moyweb;

inline std::filesystem::path corpus_dir() { return MOYWEB_CORPUS_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// All corpus .web files, sorted by path.
inline std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(corpus_dir()))
        if (entry.is_regular_file() && entry.path().extension() == ".web") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<WebDiagram> corpus_diagrams(bool closed_only = false) {
    std::vector<WebDiagram> out;
    for (const auto& p : corpus_files()) {
        WebDiagram w = parse(slurp(p));
        if (!closed_only || w.closed()) out.push_back(std::move(w));
    }
    return out;
}

/// Brute-force writhe oracle: build the cabled diagram (every edge labeled i
/// replaced by i parallel label-1 strands; cable U-turns at mixed-orientation
/// vertices become explicit cups/caps) and count its circles algebraically
/// from their windings.
inline int cabled_circle_count(const WebDiagram& w) {
    std::vector<Strand> word;  // diagram-level running word
    std::vector<SliceGenerator> cables;
    auto base_of = [&](int pos) {
        int b = 0;
        for (int i = 0; i < pos; ++i) b += word[static_cast<size_t>(i)].label;
        return b;
    };
    for (const SliceGenerator& g : w.slices()) {
        const int base = base_of(g.pos);
        switch (g.kind) {
            case SliceGenerator::Kind::cup: {
                for (int i = 0; i < g.label; ++i)
                    cables.push_back(SliceGenerator::cup(base + i, 1, g.turn));
                auto pair = cup_strands(g.label, g.turn);
                word.insert(word.begin() + g.pos, pair.begin(), pair.end());
                break;
            }
            case SliceGenerator::Kind::cap: {
                const int l = word[static_cast<size_t>(g.pos)].label;
                for (int i = 0; i < l; ++i)
                    cables.push_back(SliceGenerator::cap(base + l - 1 - i, g.turn));
                word.erase(word.begin() + g.pos, word.begin() + g.pos + 2);
                break;
            }
            case SliceGenerator::Kind::merge: {
                const Strand a = g.consumed[0], b = g.consumed[1];
                if (a.dir != b.dir) {
                    const Turn t = a.dir == Dir::up ? Turn::rightward : Turn::leftward;
                    for (int i = 0; i < std::min(a.label, b.label); ++i)
                        cables.push_back(SliceGenerator::cap(base + a.label - 1 - i, t));
                }
                word.erase(word.begin() + g.pos, word.begin() + g.pos + 2);
                word.insert(word.begin() + g.pos, g.produced[0]);
                break;
            }
            case SliceGenerator::Kind::split: {
                const Strand l = g.produced[0], r = g.produced[1];
                if (l.dir != r.dir) {
                    const Turn t = l.dir == Dir::down ? Turn::rightward : Turn::leftward;
                    const int m = std::min(l.label, r.label);
                    // pass-through cables stick to the leg matching the
                    // consumed direction; turning pairs fill the gap
                    const int offset = g.consumed[0].dir == l.dir ? g.consumed[0].label : 0;
                    for (int i = 0; i < m; ++i)
                        cables.push_back(SliceGenerator::cup(base + offset + i, 1, t));
                }
                word.erase(word.begin() + g.pos);
                word.insert(word.begin() + g.pos, g.produced.begin(), g.produced.end());
                break;
            }
        }
    }
    WebDiagram cabled(1, {}, std::move(cables));
    if (!cabled.is_valid() || !cabled.closed()) throw WebError("cabling oracle: bad cabled diagram");
    int count = 0;
    for (const EdgeInfo& e : cabled.edges()) {
        if (e.turn_halves != 2 && e.turn_halves != -2)
            throw WebError("cabling oracle: circle with winding != +-1");
        count += e.turn_halves / 2;
    }
    return count;
}

}  // namespace testutil
