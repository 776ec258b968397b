#include "eigensurf/worker_pool.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace eigensurf {

namespace {
thread_local bool inside_loop = false;

struct LoopGuard {
    bool previous;
    LoopGuard() : previous(inside_loop) { inside_loop = true; }
    ~LoopGuard() { inside_loop = previous; }
};
} // namespace

struct WorkerPool::Job {
    std::size_t count;
    const std::function<void(std::size_t)>* body;
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
};

WorkerPool::WorkerPool(unsigned threads) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    workers_.reserve(threads - 1);
    for (unsigned i = 1; i < threads; ++i)
        workers_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
}

unsigned WorkerPool::default_threads() {
    if (const char* env = std::getenv("EIGENSURF_THREADS")) {
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec == std::errc() && *ptr == '\0' && value > 0)
            return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void WorkerPool::run_job(Job& job) {
    LoopGuard guard;
    for (;;) {
        std::size_t i = job.next.fetch_add(1, std::memory_order_relaxed);
        if (i >= job.count)
            return;
        try {
            (*job.body)(i);
        } catch (...) {
            std::lock_guard lock(job.error_mutex);
            if (!job.error)
                job.error = std::current_exception();
            job.next.store(job.count, std::memory_order_relaxed);
        }
    }
}

void WorkerPool::worker_loop() {
    std::size_t seen = 0;
    for (;;) {
        Job* job = nullptr;
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stopping_ || (generation_ != seen && job_); });
            if (stopping_)
                return;
            seen = generation_;
            job = job_;
            ++active_;
        }
        run_job(*job);
        {
            std::lock_guard lock(mutex_);
            --active_;
        }
        done_.notify_all();
    }
}

void WorkerPool::parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    if (count == 0)
        return;
    if (inside_loop || workers_.empty() || count == 1) {
        LoopGuard guard;
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::lock_guard submit(submit_mutex_);
    Job job;
    job.count = count;
    job.body = &body;
    {
        std::lock_guard lock(mutex_);
        job_ = &job;
        ++generation_;
    }
    wake_.notify_all();
    run_job(job);
    {
        std::unique_lock lock(mutex_);
        job_ = nullptr;
        done_.wait(lock, [&] { return active_ == 0; });
    }
    if (job.error)
        std::rethrow_exception(job.error);
}

void parallel_for(WorkerPool* pool, std::size_t count,
                  const std::function<void(std::size_t)>& body) {
    if (pool) {
        pool->parallel_for(count, body);
        return;
    }
    for (std::size_t i = 0; i < count; ++i)
        body(i);
}

} // namespace eigensurf
