#pragma once

#include <string>
#include <utility>
#include <vector>

namespace diffalg {

// Outcome of a verification suite: instance counts, pass flag, and the
// offending inputs when a check fails.  Serialized to JSON by the CLI.
struct Report {
    std::string lemma;
    long instances = 0;
    bool pass = true;
    std::vector<std::string> counterexamples;
    std::vector<std::pair<std::string, std::string>> meta; // seed, bounds, version, ...

    void check(bool ok, const std::string& witness) {
        ++instances;
        if (!ok) {
            pass = false;
            if (counterexamples.size() < 32) counterexamples.push_back(witness);
        }
    }
    void note(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }
    void absorb(const Report& sub) {
        instances += sub.instances;
        if (!sub.pass) {
            pass = false;
            for (const auto& c : sub.counterexamples)
                if (counterexamples.size() < 32)
                    counterexamples.push_back(sub.lemma + ": " + c);
        }
    }
};

} // namespace diffalg
