import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from app.config import get_settings
from app.models import (
    BellDiagonalState,
    ChainParams,
    DecoherencePair,
    OracleReport,
    VerificationReport,
)
from app.service import information_service as info
from app.service.chain_service import decoherence_factors, decoherence_trace
from app.service.dynamics_service import as_matrix, eigenvalues_xstate, evolve_state

settings = get_settings()
logger = logging.getLogger(__name__)

PAIRS = [(mu, nu) for mu in range(1, 5) for nu in range(mu + 1, 5)]

NAMED_CASES = {
    "bell-phi": ((1.0, -1.0, 1.0), (1.0, 1.0)),
    "bell-psi": ((1.0, 1.0, -1.0), (1.0, 1.0)),
    "mixed": ((1.0, -0.2, 0.2), (1.0, 1.0)),
    "mixed-decohered": ((1.0, -0.2, 0.2), (0.0, 0.0)),
    "maximally-mixed": ((0.0, 0.0, 0.0), (1.0, 1.0)),
}


class VerificationService:
    """Oracles that check the closed forms against definition-level computations"""

    def __init__(self, tolerance: Optional[float] = None, identity_tolerance: Optional[float] = None):
        self.tolerance = settings.VERIFY_TOLERANCE if tolerance is None else tolerance
        self.identity_tolerance = (
            settings.IDENTITY_TOLERANCE if identity_tolerance is None else identity_tolerance
        )

    def _entry(self, case_id: str, quantity: str, closed: float, oracle: float, tolerance: float) -> OracleReport:
        diff = abs(float(closed) - float(oracle))
        return OracleReport(
            case_id=case_id,
            quantity=quantity,
            closed_form=float(closed),
            oracle=float(oracle),
            abs_diff=diff,
            tolerance=tolerance,
            passed=diff <= tolerance,
        )

    def _worst(
        self,
        case_id: str,
        quantity: str,
        expected: np.ndarray,
        actual: np.ndarray,
    ) -> OracleReport:
        """One entry per identity: the grid point where it is violated most."""
        expected = np.broadcast_to(np.asarray(expected, dtype=float), np.shape(actual))
        i = int(np.argmax(np.abs(expected - actual)))
        return self._entry(case_id, quantity, expected[i], actual[i], self.identity_tolerance)

    def oracle_entropy_quantities(
        self,
        s0: BellDiagonalState,
        f: DecoherencePair,
        case_id: str = "case",
    ) -> List[OracleReport]:
        """
        Closed forms vs the generic pipeline on the dense matrix

        Args:
            s0: initial Bell-diagonal state
            f: decoherence factors applied to it
            case_id: label carried into every entry

        Returns:
            List[OracleReport]: S(A|B), delta, both bounds, the uncertainty, the
            memory-less Shannon sum and the X-state spectrum
        """
        x = evolve_state(s0, f)
        rho = as_matrix(x)
        tol = self.tolerance

        closed_spectrum = np.sort(eigenvalues_xstate(x))
        generic_spectrum = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
        worst = int(np.argmax(np.abs(closed_spectrum - generic_spectrum)))

        return [
            self._entry(case_id, "s_cond", info.conditional_entropy_closed(x), info.conditional_entropy(rho), tol),
            self._entry(case_id, "holevo_gap", info.holevo_gap_closed(x), info.holevo_gap(rho), tol),
            self._entry(case_id, "eub_adabi", info.eub_adabi(x), info.adabi_bound(rho), tol),
            self._entry(case_id, "eub_berta", info.eub_berta(x), info.berta_bound(rho), tol),
            self._entry(case_id, "lhs", info.lhs_closed(x), info.lhs_uncertainty(rho), tol),
            # maximally mixed marginal: each outcome distribution is uniform
            self._entry(case_id, "shannon_sum", 2.0, info.shannon_uncertainty(rho), tol),
            self._entry(case_id, "spectrum", closed_spectrum[worst], generic_spectrum[worst], tol),
        ]

    def oracle_factor_limits(
        self,
        p: ChainParams,
        t_grid: Sequence[float],
        case_id: str = "chain",
    ) -> List[OracleReport]:
        """Unit-factor limits and mu<->nu symmetry of |F_mu,nu(t)| on a grid."""
        grid = np.asarray(t_grid, dtype=float)
        entries = []

        for mu, nu in [(1, 4), (2, 3)]:
            entries.append(self._worst(case_id, f"F{mu}{nu}(t=0)", 1.0, decoherence_factors(mu, nu, [0.0], p)))

        for mu in range(1, 5):
            entries.append(self._worst(case_id, f"F{mu}{mu}", 1.0, decoherence_factors(mu, mu, grid, p)))

        for mu, nu in PAIRS:
            entries.append(
                self._worst(
                    case_id,
                    f"F{mu}{nu}=F{nu}{mu}",
                    decoherence_factors(mu, nu, grid, p),
                    decoherence_factors(nu, mu, grid, p),
                )
            )

        for parameter in ("g", "gamma"):
            frozen = p.with_value(parameter, 0.0)
            for mu, nu in PAIRS:
                entries.append(
                    self._worst(case_id, f"{parameter}=0 F{mu}{nu}", 1.0, decoherence_factors(mu, nu, grid, frozen))
                )

        symmetric = p.with_value("delta_coupling", 0.0)
        entries.append(
            self._worst(case_id, "delta_coupling=0 F23", 1.0, decoherence_factors(2, 3, grid, symmetric))
        )
        return entries

    def oracle_positivity(
        self,
        s0: BellDiagonalState,
        p: ChainParams,
        t_grid: Sequence[float],
        case_id: str = "positivity",
    ) -> List[OracleReport]:
        """Evolved states stay unit-trace and positive (generic eigensolver)."""
        grid = np.asarray(t_grid, dtype=float)
        f14, f23 = decoherence_trace(grid, p)

        negativity = np.zeros(len(grid))
        traces = np.zeros(len(grid))
        for i, t in enumerate(grid):
            pair = DecoherencePair(t=float(t), f14=float(f14[i]), f23=float(f23[i]))
            rho = as_matrix(evolve_state(s0, pair))
            negativity[i] = max(0.0, -float(np.linalg.eigvalsh(rho).min()))
            traces[i] = float(np.trace(rho).real)

        return [
            self._worst(case_id, "negativity", 0.0, negativity),
            self._worst(case_id, "trace", 1.0, traces),
        ]

    def random_cases(self, seed: Union[int, np.random.SeedSequence], cases: int) -> List[Tuple[str, BellDiagonalState, DecoherencePair]]:
        """Uniform states in the Bell-diagonal tetrahedron (rejection) and factors in [0, 1]."""
        rng = np.random.default_rng(seed)
        width = len(str(cases))
        drawn = []
        while len(drawn) < cases:
            r = rng.uniform(-1.0, 1.0, size=3)
            f = rng.uniform(0.0, 1.0, size=2)
            state = BellDiagonalState.model_construct(r1=float(r[0]), r2=float(r[1]), r3=float(r[2]))
            if not state.is_physical():
                continue
            drawn.append((
                f"random-{len(drawn):0{width}d}",
                BellDiagonalState(r1=float(r[0]), r2=float(r[1]), r3=float(r[2])),
                DecoherencePair(t=0.0, f14=float(f[0]), f23=float(f[1])),
            ))
        return drawn

    def random_chains(self, seed: Union[int, np.random.SeedSequence], count: int) -> List[ChainParams]:
        rng = np.random.default_rng(seed)
        return [
            ChainParams(
                N=int(rng.integers(3, 201)),
                gamma=float(rng.uniform(0.1, 2.0)),
                lambda_=float(rng.uniform(0.1, 2.0)),
                D=float(rng.uniform(-0.5, 0.5)),
                g=float(rng.uniform(0.0, 0.3)),
                delta_coupling=float(rng.uniform(-1.0, 1.0)),
            )
            for _ in range(count)
        ]

    def run_suite(self, seed: int, cases: int) -> VerificationReport:
        """
        Default verification suite

        Args:
            seed: seeds every random draw; recorded in the report
            cases: number of random Bell-diagonal cases

        Returns:
            VerificationReport: entries sorted by (case_id, quantity)
        """
        state_seed, chain_seed = np.random.SeedSequence(seed).spawn(2)
        entries: List[OracleReport] = []

        for case_id, (r, f) in NAMED_CASES.items():
            state = BellDiagonalState(r1=r[0], r2=r[1], r3=r[2])
            pair = DecoherencePair(t=0.0, f14=f[0], f23=f[1])
            entries.extend(self.oracle_entropy_quantities(state, pair, case_id))

        logger.info(f"🎲 Checking {cases} random Bell-diagonal cases (seed={seed})")
        for case_id, state, pair in self.random_cases(state_seed, cases):
            entries.extend(self.oracle_entropy_quantities(state, pair, case_id))

        default_chain = ChainParams()
        grid = np.linspace(0.0, 30.0, settings.VERIFY_GRID_POINTS)
        entries.extend(self.oracle_factor_limits(default_chain, grid, "chain-default"))
        for i, chain in enumerate(self.random_chains(chain_seed, 3)):
            entries.extend(self.oracle_factor_limits(chain, np.linspace(0.0, 20.0, 50), f"chain-random-{i}"))

        positivity_grid = np.linspace(0.0, 30.0, 200)
        for case_id in ("bell-phi", "mixed", "maximally-mixed"):
            r, _ = NAMED_CASES[case_id]
            state = BellDiagonalState(r1=r[0], r2=r[1], r3=r[2])
            entries.extend(self.oracle_positivity(state, default_chain, positivity_grid, f"positivity-{case_id}"))

        entries.sort(key=lambda e: (e.case_id, e.quantity))
        failures = [e for e in entries if not e.passed]
        for entry in failures:
            logger.warning(
                f"⚠️ {entry.case_id} {entry.quantity}: |{entry.closed_form!r} - {entry.oracle!r}| "
                f"= {entry.abs_diff:.3e} > {entry.tolerance:.1e}"
            )
        logger.info(f"✅ {len(entries) - len(failures)}/{len(entries)} oracle checks passed")

        return VerificationReport(
            seed=seed,
            cases=cases,
            tolerance=self.tolerance,
            identity_tolerance=self.identity_tolerance,
            passed=not failures,
            failures=len(failures),
            entries=entries,
        )


# 싱글톤 인스턴스
verification_service = VerificationService()
