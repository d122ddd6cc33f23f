import h5py
import json
import numpy
from portsim.utils.misc import serialise


def get_input_value(inputs, key, default=0, alias=None, verbose=False):
    """Helper routine to parse input options.
    """
    val = inputs.get(key, None)
    if val is None:
        if alias is not None:
            for a in alias:
                val = inputs.get(a, None)
                if val is not None:
                    break
        if val is None:
            val = default
            if verbose:
                print("# Note: {} not specified. Setting to default value"
                      " of {}.".format(key, default))
    return val


def to_json(obj, verbose=0):
    json_string = json.dumps(serialise(obj, verbose=verbose),
                             sort_keys=False, indent=4)
    return json_string


def write_run(filename, trace, metadata, text):
    """Archive a simulated trace to HDF5.

    Parameters
    ----------
    filename : string
        Output file, overwritten.
    trace : :class:`portsim.streams.history.TimedTrace`
        Simulated behaviour.
    metadata : string
        JSON description of the run.
    text : string
        Trace in the text format.
    """
    channels = sorted(trace.channels)
    counts = numpy.zeros((trace.horizon, len(channels)), dtype=numpy.int64)
    for n, tick in enumerate(trace.ticks):
        for ic, c in enumerate(channels):
            counts[n, ic] = len(tick[c])
    with h5py.File(filename, 'w') as fh5:
        fh5['metadata'] = metadata
        fh5['trace'] = text
        fh5['counts'] = counts
        fh5['channels'] = numpy.array([c.encode('utf-8') for c in channels],
                                      dtype='S')
