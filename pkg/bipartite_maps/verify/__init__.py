from .checks import SUITES, VerificationChecks, run_check, run_suites, verification_check

__all__ = ["SUITES", "VerificationChecks", "run_check", "run_suites", "verification_check"]
