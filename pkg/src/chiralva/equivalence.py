"""The two functors between vertex algebras without vacuum over the affine
line and chiral algebras, plus exact round-trip verification.

Translation is a re-reading of the same table: the mode u_n v becomes the
m = 0 coefficient layer B^n_0(u, v), the higher layers being forced by the
recursion; the inverse functor reads the m = 0 layer back as a mode table.
Both directions insist that the input passes its axiom suite first, so a
broken table is rejected by name rather than silently round-tripped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chiral import ChiralData, check_all_chiral
from .errors import ContractError
from .report import CheckReport
from .vertex import VAData, check_all_va, equal_tables, tensor_with_ox


@dataclass(frozen=True)
class TranslationReport:
    direction: str
    passed: bool
    witness: str | None = None

    def headline(self) -> str:
        status = "EXACT" if self.passed else "MISMATCH"
        line = f"roundtrip ({self.direction}): {status}"
        if self.witness:
            line += f"; first witness: {self.witness}"
        return line


def _require_pass(data, run_suite, what: str):
    if data._cache.get("suite_ok"):
        return
    for rep in run_suite(data):
        if not rep.passed:
            raise ContractError(
                f"{what} fails the {rep.name} axiom"
                + (f" at {rep.witness}" if rep.witness else "")
            )
    data._cache["suite_ok"] = True


def va_to_chiral(V: VAData, *, checked: bool = True) -> ChiralData:
    """B^n_m(u, v) = ((-1)^m / m!) u_{m+n} v; only the m = 0 layer is stored,
    so the recursion holds by construction.  Plain-Q input is first read over
    Q[z]."""
    if V.coeff_ring == "Q":
        V = tensor_with_ox(V)
    if checked:
        _require_pass(V, check_all_va, "vertex algebra")
    return ChiralData(V.rank, V.basis_names, dict(V.structure), V.d_cols)


def chiral_to_va(A: ChiralData, *, checked: bool = True) -> VAData:
    """u_n v = B^n_0(u, v) with D the global-sections derivation."""
    if checked:
        _require_pass(A, check_all_chiral, "chiral algebra")
    return VAData(A.rank, "Q[z]", A.basis_names, dict(A.m0), A.d_cols)


def roundtrip_va(V: VAData) -> TranslationReport:
    if V.coeff_ring == "Q":
        V = tensor_with_ox(V)
    back = chiral_to_va(va_to_chiral(V))
    ok, witness = equal_tables(V, back)
    return TranslationReport("va -> chiral -> va", ok, witness)


def roundtrip_chiral(A: ChiralData) -> TranslationReport:
    back = va_to_chiral(chiral_to_va(A))
    ok, witness = equal_tables(A.va_view(), back.va_view())
    if ok:
        # The second direction recovers the full family from its m = 0 layer
        # through the recursion, so stored non-closed-form layers would be lost.
        for key in sorted(A.overrides):
            i, n, j, m = key
            if A.overrides[key] != back.b_layer(i, n, j, m):
                ok = False
                witness = (
                    f"explicit layer (u={A.basis_names[i]}, v={A.basis_names[j]}, "
                    f"n={n}, m={m}) disagrees with the recursion closed form"
                )
                break
    return TranslationReport("chiral -> va -> chiral", ok, witness)


def roundtrip_check(x) -> TranslationReport:
    if isinstance(x, VAData):
        return roundtrip_va(x)
    if isinstance(x, ChiralData):
        return roundtrip_chiral(x)
    raise ContractError("roundtrip_check expects VAData or ChiralData")


def roundtrip_report(x) -> CheckReport:
    tr = roundtrip_check(x)
    return CheckReport("roundtrip", "roundtrip", tr.passed, tr.direction, tr.witness)
