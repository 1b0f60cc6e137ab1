import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np

from app.config import get_settings
from app.exceptions import ConfigError
from app.models import (
    BellDiagonalState,
    ChainParams,
    DecoherencePair,
    ScenarioConfig,
    SweepSummary,
    TraceRow,
    VerificationReport,
)
from app.service.chain_service import decoherence_trace
from app.service.dynamics_service import evolve_state
from app.service.information_service import report
from app.service.verification_service import VerificationService, verification_service

settings = get_settings()
logger = logging.getLogger(__name__)


class ScenarioService:
    """Trajectories, parameter sweeps and the verification run behind the CLI"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = max(1, settings.SWEEP_WORKERS if workers is None else workers)
        self.executor = ThreadPoolExecutor(max_workers=self.workers)

    @staticmethod
    def time_grid(cfg: ScenarioConfig) -> np.ndarray:
        return np.linspace(cfg.t_start, cfg.t_end, cfg.t_steps)

    def _trace(self, chain: ChainParams, state: BellDiagonalState, grid: np.ndarray) -> List[TraceRow]:
        f14, f23 = decoherence_trace(grid, chain)
        rows = []
        for i, t in enumerate(grid):
            pair = DecoherencePair(t=float(t), f14=float(f14[i]), f23=float(f23[i]))
            x = evolve_state(state, pair)
            bounds = report(pair.t, x)
            rows.append(TraceRow(
                t=pair.t,
                f14=pair.f14,
                f23=pair.f23,
                gamma_c=x.gamma_c,
                omega_c=x.omega_c,
                s_cond=bounds.s_cond,
                holevo_gap=bounds.holevo_gap,
                eub_adabi=bounds.eub_adabi,
                eub_berta=bounds.eub_berta,
                lhs=bounds.lhs,
            ))
        return rows

    def run_trace(self, cfg: ScenarioConfig) -> List[TraceRow]:
        """
        Single trajectory: decoherence pair -> evolved X state -> bounds, per time point

        Args:
            cfg: scenario without a sweep

        Returns:
            List[TraceRow]: one row per point of the uniform grid, t increasing
        """
        if cfg.sweep is not None:
            raise ConfigError("a trace takes no sweep; use the sweep command", {"sweep": "must be absent"})
        logger.info(f"📈 Trace N={cfg.chain.N}, {cfg.t_steps} points on [{cfg.t_start}, {cfg.t_end}]")
        return self._trace(cfg.chain, cfg.state, self.time_grid(cfg))

    def run_sweep(self, cfg: ScenarioConfig) -> Dict[float, List[TraceRow]]:
        """
        One trace per sweep value on a shared time grid

        Traces run concurrently on the executor; the result is ordered by
        ascending sweep value whatever the completion order.
        """
        if cfg.sweep is None:
            raise ConfigError("a sweep needs a 'sweep' section", {"sweep": "field required"})
        values = sorted(cfg.sweep.values)
        grid = self.time_grid(cfg)
        chains = [cfg.chain_for(v) for v in values]

        logger.info(f"🚀 Sweep over {cfg.sweep.parameter} ({len(values)} values, {self.workers} workers)")
        if self.workers > 1:
            traces = list(self.executor.map(lambda chain: self._trace(chain, cfg.state, grid), chains))
        else:
            traces = [self._trace(chain, cfg.state, grid) for chain in chains]
        return dict(zip(values, traces))

    @staticmethod
    def summarize(cfg: ScenarioConfig, traces: Dict[float, List[TraceRow]]) -> SweepSummary:
        """Time-averaged Adabi bound per sweep value."""
        values = sorted(traces)
        return SweepSummary(
            parameter=cfg.sweep.parameter,
            values=values,
            mean_eub_adabi=[float(np.mean([row.eub_adabi for row in traces[v]])) for v in values],
        )

    def run_verify(self, seed: int, cases: int, tolerance: Optional[float] = None) -> VerificationReport:
        """tolerance overrides both verification tolerances (0 forces failures)."""
        if cases < 1:
            raise ConfigError("cases must be at least 1", {"cases": "must be >= 1"})
        service = verification_service if tolerance is None else VerificationService(tolerance, tolerance)
        return service.run_suite(seed, cases)


# 싱글톤 인스턴스
scenario_service = ScenarioService()
