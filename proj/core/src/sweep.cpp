#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "hpasm/constants.hpp"
#include "hpasm/errors.hpp"

namespace hpasm {

namespace {

std::string canonical(const ConstantQuery& q) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s|m=%d|p=%d|q=%d|z=%d|alpha=%.17g", to_string(q.inequality).c_str(), q.m, q.p,
                q.q, q.z, q.alpha);
  return buf;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const ConstantQuery& q) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.txt", static_cast<unsigned long long>(query_hash(q)));
  return dir / name;
}

std::optional<double> cache_lookup(const std::filesystem::path& dir, const ConstantQuery& q) {
  std::ifstream in(cache_file(dir, q));
  if (!in) return std::nullopt;
  std::string key;
  double value = 0.0;
  if (!std::getline(in, key) || key != canonical(q) || !(in >> value)) return std::nullopt;
  return value;
}

void cache_store(const std::filesystem::path& dir, const ConstantQuery& q, double value) {
  std::filesystem::create_directories(dir);
  const auto target = cache_file(dir, q);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out << canonical(q) << '\n' << buf << '\n';
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::uint64_t query_hash(const ConstantQuery& query) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical(query)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* dir = std::getenv("HPASM_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

std::vector<SweepRow> evaluate_queries(const std::vector<ConstantQuery>& queries, const SweepOptions& options) {
  std::vector<SweepRow> rows(queries.size());
  parallel_for(queries.size(), options.threads, [&](std::size_t i) {
    const ConstantQuery& q = queries[i];
    std::optional<double> value;
    if (options.cache_dir) value = cache_lookup(*options.cache_dir, q);
    if (!value) {
      value = compute_constant(q).constant;
      if (options.cache_dir) cache_store(*options.cache_dir, q, *value);
    }
    rows[i] = {q.inequality, q.m, q.p, q.q, q.alpha, *value};
  });
  return rows;
}

std::vector<SweepRow> sweep_constants(Inequality ineq, int m, const std::vector<int>& p_range,
                                      const std::vector<int>& q_range, double alpha, const SweepOptions& options) {
  if (p_range.empty() || q_range.empty()) throw Error("sweep ranges must be nonempty");
  std::vector<ConstantQuery> queries;
  for (int p : p_range)
    for (int q : q_range) queries.push_back({ineq, p, q, m, 1, alpha});
  return evaluate_queries(queries, options);
}

std::vector<SweepRow> line_sweep(int ratio, int q_max, double alpha, const SweepOptions& options) {
  if (ratio < 1 || q_max < 1) throw Error("line sweep needs ratio >= 1 and q_max >= 1");
  std::vector<ConstantQuery> queries;
  for (Inequality ineq : {Inequality::Basic0, Inequality::Basic1})
    for (int m = 0; m <= 1; ++m)
      for (int q = 1; q <= q_max; ++q) queries.push_back({ineq, ratio * q, q, m, 1, alpha});
  return evaluate_queries(queries, options);
}

}  // namespace hpasm
