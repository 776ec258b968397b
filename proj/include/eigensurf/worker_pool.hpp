#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eigensurf {

/// Fixed-size pool running index-parallel loops. The calling thread takes part
/// in every loop. A parallel_for issued from inside a running loop body executes
/// inline on the calling thread, so nested use cannot deadlock.
///
/// Every body writes to a distinct output slot, so results never depend on the
/// number of workers.
class WorkerPool {
public:
    /// threads == 0 means std::thread::hardware_concurrency().
    explicit WorkerPool(unsigned threads = 1);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    unsigned size() const { return static_cast<unsigned>(workers_.size()) + 1; }

    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

    /// Default worker count: EIGENSURF_THREADS if set and valid, else hardware concurrency.
    static unsigned default_threads();

private:
    struct Job;

    void worker_loop();
    static void run_job(Job& job);

    std::vector<std::jthread> workers_;
    std::mutex submit_mutex_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    Job* job_ = nullptr;
    std::size_t generation_ = 0;
    std::size_t active_ = 0;
    bool stopping_ = false;
};

/// Runs body over [0, count) on `pool`, or serially when pool is null.
void parallel_for(WorkerPool* pool, std::size_t count,
                  const std::function<void(std::size_t)>& body);

} // namespace eigensurf
