import importlib


def _lazy_import(name):
    module = importlib.import_module(f"decimcorr.{name}")
    return module


def field_new(*args, **kwargs):
    fieldcore = _lazy_import("fieldcore")
    return fieldcore.field_new(*args, **kwargs)


def seq_params(*args, **kwargs):
    seqgen = _lazy_import("seqgen")
    return seqgen.seq_params(*args, **kwargs)


def distribution(*args, **kwargs):
    seqgen = _lazy_import("seqgen")
    return seqgen.distribution(*args, **kwargs)


def classify(*args, **kwargs):
    expsums = _lazy_import("expsums")
    return expsums.classify(*args, **kwargs)


def theoretical_distribution(*args, **kwargs):
    verifier = _lazy_import("verifier")
    return verifier.theoretical_distribution(*args, **kwargs)


def verify(*args, **kwargs):
    verifier = _lazy_import("verifier")
    return verifier.verify(*args, **kwargs)
