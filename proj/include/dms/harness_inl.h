/*
Copyright 2026 The DMS Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef DMS_HARNESS_INL_H_
#define DMS_HARNESS_INL_H_

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace dms {

template <typename R, typename F>
std::vector<R> for_each_seed(const std::vector<std::uint64_t>& seeds, F&& fn) {
  const std::size_t width =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<R> out;
  out.reserve(seeds.size());
  for (std::size_t start = 0; start < seeds.size(); start += width) {
    const std::size_t end = std::min(seeds.size(), start + width);
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, fn, seeds[i]));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

}  // namespace dms

#endif  // DMS_HARNESS_INL_H_
