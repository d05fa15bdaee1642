"""Unit conversions.

All internal computation is SI (meters, m3/s, kW). Pressures at the user
interface are psi, converted to meters of water column with

    1 psi = 6894.757 Pa / (rho * g) = 0.703070 m   (rho = 1000 kg/m3,
                                                    g = 9.80665 m/s2)

Operator-facing inputs (valve settings, pressure targets) stay in psi.
"""

PASCAL_PER_PSI = 6894.757
RHO_WATER = 1000.0  # kg/m3
GRAVITY = 9.80665  # m/s2

M_PER_PSI = PASCAL_PER_PSI / (RHO_WATER * GRAVITY)

GPM_TO_M3S = 3.785411784e-3 / 60.0  # US gallon = 3.785411784 L exactly
FT_TO_M = 0.3048
IN_TO_M = 0.0254


def psi_to_head_m(p: float) -> float:
    """Pressure in psi to meters of water column."""
    return p * M_PER_PSI


def head_m_to_psi(h: float) -> float:
    """Meters of water column to psi; exact reciprocal of psi_to_head_m."""
    return h / M_PER_PSI
