import logging
import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    # FFT worker cap; 0 leaves scipy.fft at its default
    THREADS = int(os.getenv("HYPWAVE_THREADS", "0"))
    LOG_LEVEL = os.getenv("HYPWAVE_LOG_LEVEL", "WARNING")

    # floor of the relative modulus below which F(m) counts as zero; grows with grid size
    SPECTRAL_RTOL = float(os.getenv("HYPWAVE_SPECTRAL_RTOL", "1e-12"))
    # share of spectral energy outside the usable box an experiment tolerates
    TRUNCATION_ENERGY_MAX = float(os.getenv("HYPWAVE_TRUNCATION_ENERGY_MAX", "1e-12"))

    # EXPERIMENT THRESHOLDS
    SOBOLEV_SPREAD_MAX = float(os.getenv("HYPWAVE_SOBOLEV_SPREAD_MAX", "20"))
    HAAR_SPREAD_MAX = float(os.getenv("HYPWAVE_HAAR_SPREAD_MAX", "30"))
    DILATION_DRIFT_MAX = float(os.getenv("HYPWAVE_DILATION_DRIFT_MAX", "2"))
    MC_DRAWS = int(os.getenv("HYPWAVE_MC_DRAWS", "64"))

    HOST = os.getenv("HYPWAVE_HOST", "127.0.0.1")
    PORT = int(os.getenv("HYPWAVE_PORT", "8000"))

    @classmethod
    def fft_workers(cls):
        return cls.THREADS if cls.THREADS > 0 else None

    @classmethod
    def setup_logging(cls, level=None):
        logging.basicConfig(
            level=(level or cls.LOG_LEVEL).upper(),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
