class Report(object):
    """Outcome of a bounded property check.

    Parameters
    ----------
    prop : string
        Name of the checked property.
    passed : bool
        True if no counterexample was found.
    samples : int
        Number of probes / sample pairs actually examined.
    witness : object
        First counterexample found, None if passed.
    detail : string
        Human readable summary.
    """

    def __init__(self, prop, passed, samples=0, witness=None, detail=''):
        self.prop = prop
        self.passed = passed
        self.samples = samples
        self.witness = witness
        self.detail = detail

    def __bool__(self):
        return self.passed

    def summary(self):
        if self.passed:
            out = "# {}: pass ({} samples)".format(self.prop, self.samples)
        else:
            out = "# {}: FAIL after {} samples".format(self.prop, self.samples)
        if self.detail:
            out += "\n# " + self.detail
        return out

    def __repr__(self):
        return "Report({!r}, passed={}, samples={})".format(
            self.prop, self.passed, self.samples)


def merge_reports(reports, prop=None):
    """Merge per-seed reports, keeping the first failure in given order."""
    reports = list(reports)
    if prop is None:
        prop = reports[0].prop if reports else 'merged'
    total = sum(r.samples for r in reports)
    for r in reports:
        if not r.passed:
            return Report(prop, False, samples=total, witness=r.witness,
                          detail=r.detail)
    return Report(prop, True, samples=total,
                  detail="no counterexample in {} runs".format(len(reports)))
