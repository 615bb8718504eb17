class InputError(Exception):
    """Bad or unsupported input. The command line maps it to exit code 2."""
    pass


class VerificationFailure(Exception):
    """An identity that must hold exactly did not. The command line maps it to exit code 1."""
    pass
