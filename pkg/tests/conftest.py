import numpy as np
import pytest

import weibull_r as wr


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation of every hot kernel once, before any timed test."""
    sf = wr.specfun
    sf.upper_incomplete_gamma(2.5, 3.0)
    sf.upper_incomplete_gamma(0.2, 0.5)
    sf.log_upper_incomplete_gamma(2.5, 3.0)
    sf.std_normal_cdf(0.3)
    sf.std_normal_log_sf(9.0)
    sf.std_normal_isf_log(-2.0)
    sf.log_gamma(0.7)
    nb = wr.Normal(0.0, 1.0)
    nb.log_survival(np.array([-1.0, 9.0]))
    nb.inv_log_survival(np.array([-2.0]))
    sf._gamma_upper_vec(2.0, np.array([0.5, 3.0]))
    sf._norm_cdf_vec(np.array([0.1]))
    d = wr.WeibullRDist(2.0, 1.0, wr.Lomax(1.0, 1.0))
    wr.record_marginal_pdf_series(d, wr.RecordQuery(2, 4), 1.0)
    yield
