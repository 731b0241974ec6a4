#pragma once

#include <cstddef>
#include <functional>

namespace tcprof {

/// Fixed-width worker capability handed to compute stages. Work items are
/// independent; results must be written to disjoint slots so output never
/// depends on the width.
class Executor {
public:
    explicit Executor(unsigned threads = 1);

    unsigned threads() const noexcept { return threads_; }

    /// Runs fn(i) for every i in [0, count). The first exception thrown by any
    /// item is rethrown after all workers have joined.
    void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn) const;

    static Executor hardware();

private:
    unsigned threads_;
};

}  // namespace tcprof
