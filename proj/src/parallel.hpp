#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace netident::detail {

// Worker count for internal parallel loops; NETIDENT_THREADS caps it.
inline unsigned worker_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NETIDENT_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1) return std::min(hw, static_cast<unsigned>(cap));
        } catch (...) {
        }
    }
    return hw;
}

}  // namespace netident::detail
