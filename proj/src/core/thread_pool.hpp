// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_SRC_CORE_THREAD_POOL_HPP
#define LARCH_SRC_CORE_THREAD_POOL_HPP

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace larch {


/// Fixed set of worker threads executing one data-parallel job at a time.
/// parallel_for blocks until every chunk has run (the kernel-end barrier).
class ThreadPool {
public:
    explicit ThreadPool(int worker_count) : worker_count_(worker_count)
    {
        workers_.reserve(worker_count);
        for (int i = 0; i < worker_count; ++i) {
            workers_.emplace_back([this, i] { worker_loop(i); });
        }
    }

    ~ThreadPool()
    {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
        }
        start_cv_.notify_all();
        for (auto& t : workers_) {
            t.join();
        }
    }

    int worker_count() const { return worker_count_; }

    void parallel_for(
        std::int64_t n,
        const std::function<void(int, std::int64_t, std::int64_t)>& body)
    {
        if (n <= 0) {
            return;
        }
        std::unique_lock lock(mutex_);
        job_ = &body;
        job_size_ = n;
        remaining_ = worker_count_;
        ++generation_;
        start_cv_.notify_all();
        done_cv_.wait(lock, [this] { return remaining_ == 0; });
        job_ = nullptr;
    }

private:
    void worker_loop(int index)
    {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(int, std::int64_t, std::int64_t)>* job;
            std::int64_t n;
            {
                std::unique_lock lock(mutex_);
                start_cv_.wait(
                    lock, [&] { return stop_ || generation_ != seen; });
                if (stop_) {
                    return;
                }
                seen = generation_;
                job = job_;
                n = job_size_;
            }
            auto begin = n * index / worker_count_;
            auto end = n * (index + 1) / worker_count_;
            if (begin < end) {
                (*job)(index, begin, end);
            }
            {
                std::lock_guard lock(mutex_);
                if (--remaining_ == 0) {
                    done_cv_.notify_all();
                }
            }
        }
    }

    int worker_count_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(int, std::int64_t, std::int64_t)>* job_ = nullptr;
    std::int64_t job_size_ = 0;
    int remaining_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
    std::vector<std::thread> workers_;
};


}  // namespace larch

#endif  // LARCH_SRC_CORE_THREAD_POOL_HPP
