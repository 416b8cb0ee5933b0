import numpy as np
import pandas as pd


def build_report(checks: dict) -> pd.DataFrame:
    """
    pass/fail table of the verification suite

    Parameters:
    -----------
        checks:
            check name -> (list of absolute errors, tolerance, number of skipped cases)

    Returns:
    --------
        pd.DataFrame with columns check, cases, skipped, max_error, tolerance, passed
    """
    rows = []
    for name, (errors, tolerance, skipped) in checks.items():
        max_error = float(np.max(errors)) if len(errors) else np.nan
        rows.append(
            {
                "check": name,
                "cases": len(errors),
                "skipped": skipped,
                "max_error": max_error,
                "tolerance": tolerance,
                "passed": bool(len(errors)) and max_error <= tolerance,
            }
        )
    return pd.DataFrame(
        rows, columns=["check", "cases", "skipped", "max_error", "tolerance", "passed"]
    )
