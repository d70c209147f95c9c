"""Central-charge map of the Y-decohered critical chain.

Decoheres every site of the critical ground state at strength p_y, sweeps
the measurement-relaxation strength p_m, and prints the fitted c2 over the
(p_m, p_y) plane.  A small L keeps this demo quick; the CLI `case2`
subcommand runs the same pipeline at larger sizes and writes CSVs.
"""

import time

from renyimi import (
    Bipartition,
    ChannelSpec,
    TfimModel,
    apply_lifted_channel,
    default_window,
    fit_cft,
    generalized_entropy_supervector,
    ground_state,
    lift_channel,
    pure_supervector,
)

L = 8
psi = ground_state(TfimModel(L), method="dense").state
sv_pure = pure_supervector(psi)
all_sites = tuple(range(L))
window = default_window(L)
l_a_values = list(range(window[0], window[1] + 1))
p_m_grid = (0.0, 0.1, 0.25, 0.5)
p_y_grid = (0.0, 0.1, 0.2, 0.3, 0.4)

print(f"L = {L}, fit window L_A in [{window[0]}, {window[1]}]")
t0 = time.perf_counter()
table = {}
for p_y in p_y_grid:
    if p_y > 0:
        sv = apply_lifted_channel(sv_pure, lift_channel(ChannelSpec("Y", p_y, all_sites)))
    else:
        sv = sv_pure
    for p_m in p_m_grid:
        s_ab = generalized_entropy_supervector(sv, all_sites, (), "Z", p_m)
        points = []
        for l_a in l_a_values:
            part = Bipartition(L, l_a)
            s_a = generalized_entropy_supervector(sv, part.sites_A, part.sites_B, "Z", p_m)
            s_b = generalized_entropy_supervector(sv, part.sites_B, part.sites_A, "Z", p_m)
            points.append((L, l_a, s_a + s_b - s_ab))
        table[(p_m, p_y)] = fit_cft(points).c2

print(f"swept {len(table)} grid points in {time.perf_counter() - t0:.1f}s")
print()
print("fitted c2(p_m, p_y):")
print(f"{'':>9s}" + "".join(f"p_y={p_y:<5.2f}" for p_y in p_y_grid))
for p_m in p_m_grid:
    row = "".join(f"{table[(p_m, p_y)]:9.3f}" for p_y in p_y_grid)
    print(f"p_m={p_m:<5.2f}{row}")
print()
print("The c2 ~ 1 plateau at weak decoherence and its decay at strong p_y")
print("mirror the robustness of the critical scaling seen at larger sizes.")
