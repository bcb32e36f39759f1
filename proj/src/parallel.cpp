#include "walab/parallel.hpp"

#include <atomic>

namespace walab {

namespace {
std::atomic<ExecMode> g_mode{ExecMode::parallel};
}

ExecMode exec_mode() { return g_mode.load(std::memory_order_relaxed); }

void set_exec_mode(ExecMode mode) { g_mode.store(mode, std::memory_order_relaxed); }

} // namespace walab
