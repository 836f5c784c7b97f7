// SPDX-License-Identifier: Apache-2.0
//
// dmimo-sim: downlink performance of multi-cell distributed massive MIMO
// under transceiver hardware impairments
// Copyright (C) 2026 dmimo-sim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DMIMO_PARALLEL_HPP
#define DMIMO_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dmimo
{

/// Runs fn(i) for i in [0, count) over a pool of worker threads.
///
/// Work items are claimed from a shared counter. Each item must write only to
/// its own slot of a caller-owned result array, so the outcome is identical
/// for any thread count (including 0 = hardware concurrency, 1 = serial).
template <typename Fn> void parallel_for(std::size_t count, unsigned threads, Fn &&fn)
{
    if (threads == 0)
        threads = std::thread::hardware_concurrency();
    if (threads <= 1 || count <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load())
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (failed.load())
        std::rethrow_exception(error);
}

/// Reduces a vector by pairwise merging in a fixed tree order. The result
/// depends only on the element order, not on how the work was scheduled.
template <typename T, typename Merge> T pairwise_reduce(std::vector<T> items, Merge merge)
{
    while (items.size() > 1)
    {
        std::vector<T> out;
        out.reserve((items.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < items.size(); i += 2)
            out.push_back(merge(items[i], items[i + 1]));
        if (items.size() % 2 == 1)
            out.push_back(items.back());
        items = std::move(out);
    }
    return items.front();
}

} // namespace dmimo

#endif
