/*
 * Copyright (C) 2026 The discplan Authors
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
 *
*/

#ifndef DISCPLAN__PARALLEL_HPP
#define DISCPLAN__PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace discplan {

/// Runs f(i) for i in [0, n) on up to `workers` threads. Results must be
/// written to per-index slots so output order never depends on scheduling.
/// The first exception thrown by any task is rethrown on the caller.
template<typename F>
void parallel_for(std::size_t n, std::size_t workers, F&& f)
{
  if (workers <= 1 || n <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]()
    {
      for (std::size_t i = next++; i < n; i = next++)
      {
        try
        {
          f(i);
        }
        catch (...)
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error)
            error = std::current_exception();
        }
      }
    };

  std::vector<std::thread> pool;
  const std::size_t count = std::min(workers, n);
  for (std::size_t t = 1; t < count; ++t)
    pool.emplace_back(run);
  run();
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace discplan

#endif // DISCPLAN__PARALLEL_HPP
