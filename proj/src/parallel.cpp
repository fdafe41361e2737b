#include "zetadist/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zetadist {

void for_each_chunk(std::size_t items, std::size_t chunk, unsigned threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (chunk == 0) chunk = kReductionChunk;
    const std::size_t chunks = chunk_count(items, chunk);
    if (chunks == 0) return;

    auto run = [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        body(c, begin, std::min(items, begin + chunk));
    };

    const auto workers = static_cast<std::size_t>(std::max(1u, threads));
    if (workers == 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) run(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                run(c);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(std::min(workers, chunks));
    for (std::size_t i = 0; i < std::min(workers, chunks); ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace zetadist
