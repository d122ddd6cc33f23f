from portsim.sysmodel.medium import DELAYS, LOSS, SERVE
from portsim.utils.io import get_input_value


class CheckOpts(object):
    r"""Input options of the checking layer.

    Initialised from a dict containing the following options, none of which
    are required.

    Parameters
    ----------
    samples : int
        Number of sampled input pairs (pulse checks) or probes (medium
        containment). Default 500.
    horizon : int
        Length of sampled input histories. Default 12.
    budget : int
        Probe budget of the reactivity check and of trace membership.
        Default 10000.
    branch : int
        Transitions explored per (state, tick) when enumerating behaviours.
        Default 4.
    frontier : int
        Maximum number of (state, prefix) nodes kept per tick. Default 256.
    rng_seed : int
        Seed of the first run. Drawn on the root process if not given.
    runs : int
        Number of independently seeded runs the samples are split into. The
        runs are distributed over the available processes. Default 4.
    stable_from : int
        Tick from which the stability property requires constant outputs.
        Default 3.
    reactivity : string
        ``sampled`` or ``exhaustive``. Default ``sampled``.
    bound : int
        Messages per channel enumerated by the exhaustive reactivity check.
        Default 2.
    """

    def __init__(self, inputs=None, verbose=False):
        inputs = {} if inputs is None else inputs
        self.samples = get_input_value(inputs, 'samples', default=500,
                                       alias=['nsamples', 'num_samples'],
                                       verbose=verbose)
        self.horizon = get_input_value(inputs, 'horizon', default=12,
                                       alias=['T'], verbose=verbose)
        self.budget = get_input_value(inputs, 'budget', default=10000,
                                      alias=['probes', 'max_probes'],
                                      verbose=verbose)
        self.branch = get_input_value(inputs, 'branch', default=4,
                                      alias=['k'], verbose=verbose)
        self.frontier = get_input_value(inputs, 'frontier', default=256,
                                        alias=['max_frontier'],
                                        verbose=verbose)
        self.rng_seed = get_input_value(inputs, 'rng_seed', default=None,
                                        alias=['seed', 'random_seed'],
                                        verbose=verbose)
        self.runs = get_input_value(inputs, 'runs', default=4,
                                    alias=['nruns'], verbose=verbose)
        self.stable_from = get_input_value(inputs, 'stable_from', default=3,
                                           verbose=verbose)
        self.reactivity = get_input_value(inputs, 'reactivity',
                                          default='sampled',
                                          alias=['reactivity_mode'],
                                          verbose=verbose)
        self.bound = get_input_value(inputs, 'bound', default=2,
                                     verbose=verbose)
        if self.runs < 1:
            raise ValueError("runs must be at least one")

    def per_run(self, total):
        """Share of ``total`` given to each run, rounded up."""
        return -(-int(total) // self.runs)


class MediumOpts(object):
    r"""Delivery options of a scenario medium.

    Parameters
    ----------
    delay : string
        ``cma`` (may deliver in the arrival tick) or ``cmas`` (delays by at
        least one tick). Default ``cmas``.
    window : int
        Fairness window. Defaults to four ticks per destination.
    batch : int or string
        Messages delivered per destination and tick; ``all`` for no limit.
        Default 1.
    serve : string
        ``fair`` or ``all``. Default ``fair``.
    idle : int
        Nil slots per fairness round. Default 0.
    policy : string
        ``error`` or ``drop`` for messages without destination. Default
        ``error``.
    """

    def __init__(self, inputs=None, verbose=False):
        inputs = {} if inputs is None else inputs
        self.delay = get_input_value(inputs, 'delay', default='cmas',
                                     verbose=verbose)
        self.window = get_input_value(inputs, 'window', default=None,
                                      alias=['W'], verbose=verbose)
        self.batch = get_input_value(inputs, 'batch', default=1,
                                     alias=['B'], verbose=verbose)
        self.serve = get_input_value(inputs, 'serve', default='fair',
                                     verbose=verbose)
        self.idle = get_input_value(inputs, 'idle', default=0,
                                    verbose=verbose)
        self.policy = get_input_value(inputs, 'policy', default='error',
                                      alias=['loss'], verbose=verbose)
        for value, allowed, what in ((self.delay, DELAYS, 'delay'),
                                     (self.serve, SERVE, 'serve'),
                                     (self.policy, LOSS, 'policy')):
            if value not in allowed:
                raise ValueError("{} must be one of {}, got {!r}".format(
                                 what, allowed, value))
        if self.window is not None:
            self.window = int(self.window)
        if self.batch != 'all':
            self.batch = int(self.batch)
        self.idle = int(self.idle)
