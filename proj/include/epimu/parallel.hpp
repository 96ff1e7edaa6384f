/*
 * Copyright 2026 The epimu Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EPIMU_PARALLEL_HPP
#define EPIMU_PARALLEL_HPP

#include "epimu/common.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace epimu {

/// Smallest i < count with pred(i), or npos. Reference implementation.
template <class Pred>
std::size_t serial_first_index(std::size_t count, Pred&& pred)
{
    for (std::size_t i = 0; i < count; ++i)
        if (pred(i))
            return i;
    return npos;
}

/**
 * Same result as serial_first_index. Candidates are scanned in blocks; each
 * block is searched in parallel and the scan stops at the first block with a
 * hit, so the minimum index wins whatever the schedule.
 */
template <class Pred>
std::size_t parallel_first_index(std::size_t count, Pred&& pred, std::size_t block = 64)
{
    for (std::size_t lo = 0; lo < count; lo += block) {
        const std::size_t hi = std::min(count, lo + block);
        std::size_t best = npos;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
        for (std::size_t i = lo; i < hi; ++i)
            if (i < best && pred(i))
                best = i;
        if (best != npos)
            return best;
    }
    return npos;
}

} // namespace epimu

#endif
