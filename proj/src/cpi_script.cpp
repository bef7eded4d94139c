#include "wawk/cpi_script.hpp"

namespace wawk {

// Keep in sync with scripts/cpi.wawk (checked by tests).
std::string_view cpi_script()
{
    return R"wawk(// Cycles per instruction for the mnemonic given as args[0].
// An instruction starts when i_ibus_ack is high on a clk posedge sample; it
// is measured at the last posedge before the next ack. One clock cycle spans
// two indices, hence the division by two.
BEGIN: {
  import(extern);
  cpis = [];
  alias(clk, TOP.servant_sim.dut.cpu.clk);
  alias(fire, TOP.servant_sim.dut.cpu.i_ibus_ack);
  alias(instruction, TOP.servant_sim.dut.cpu.i_ibus_rdt);
}

clk, !fire, fire@2, op == args[0]: {
  cpis = cpis + ((INDEX - start) / 2);
}

clk, fire: {
  start = INDEX;
  op = call(extern.decode, instruction);
}

END: {
  if (cpis) {
    if (min(cpis) == max(cpis)) {
      printf("%s: %d\n", args[0], average(cpis));
    } else {
      printf("%s: avg=%d min=%d max=%d\n", args[0], average(cpis), min(cpis), max(cpis));
    };
  };
}
)wawk";
}

} // namespace wawk
