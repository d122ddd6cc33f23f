'''Various useful routines maybe not appropriate elsewhere'''

import numpy
import types
import zlib
from functools import reduce


def is_class(obj):
    cond = (hasattr(obj, '__class__') and ('__dict__' in dir(obj))
            and not isinstance(obj, (types.FunctionType, type)))
    return cond


def serialise(obj, verbose=0):
    """Convert an object tree to something json can digest.

    Callables and generators are dropped unless verbose == 1, in which case
    their repr is kept. Sets become sorted lists.
    """
    obj_dict = {}
    if isinstance(obj, dict):
        items = obj.items()
    else:
        items = obj.__dict__.items()
    for k, v in items:
        k = str(k)
        if k.startswith('_'):
            continue
        if isinstance(v, (int, float, bool, str)) or v is None:
            obj_dict[k] = v
        elif isinstance(v, numpy.integer):
            obj_dict[k] = int(v)
        elif isinstance(v, (set, frozenset)):
            obj_dict[k] = sorted(str(x) for x in v)
        elif isinstance(v, (list, tuple)):
            obj_dict[k] = [x if isinstance(x, (int, float, bool, str))
                           else str(x) for x in v]
        elif isinstance(v, dict):
            obj_dict[k] = serialise(v, verbose)
        elif isinstance(v, (types.FunctionType, types.MethodType)):
            if verbose == 1:
                obj_dict[k] = str(v)
        elif is_class(v):
            obj_dict[k] = serialise(v, verbose)
        else:
            if verbose == 1:
                obj_dict[k] = str(v)
    return obj_dict


def get_from_dict(d, k):
    """Get value from nested dictionary.

    Parameters
    ----------
    d : dict
    k : list
        List specifying key to extract.

    Returns
    -------
    value : Return type or None.
    """
    try:
        return reduce(dict.get, k, d)
    except TypeError:
        # Value not found.
        return None


def stable_index(index):
    """Process-independent integer for an arbitrary (printable) index.

    Python's hash() is salted per process so it cannot be used to split
    random streams reproducibly.
    """
    if isinstance(index, (int, numpy.integer)) and index >= 0:
        return int(index)
    return zlib.crc32(repr(index).encode('utf-8'))
