#ifndef WALAB_PARALLEL_HPP
#define WALAB_PARALLEL_HPP

namespace walab {

// Execution mode for the data-parallel kernels (block fill, discrepancy
// scan, ones count, packed GF2 elimination). Every kernel has a serial
// reference implementation and an OpenMP one; both produce identical
// results, the serial one is kept as the test oracle.
enum class ExecMode {
    serial,
    parallel,
};

// Process-wide default used by the dispatching entry points.
ExecMode exec_mode();
void set_exec_mode(ExecMode mode);

} // namespace walab

#endif
