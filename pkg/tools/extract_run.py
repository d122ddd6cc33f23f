#!/usr/bin/env python
'''Extract message counts or messages from archived runs.'''

import argparse
import sys
import pandas as pd
from portsim.analysis.extraction import (
        extract_counts,
        extract_messages,
        get_metadata,
        set_info
        )


def parse_args(args):
    """Parse command-line arguments.

    Parameters
    ----------
    args : list of strings
        command-line arguments.

    Returns
    -------
    options : :class:`argparse.ArgumentParser`
        Command line arguments.
    """

    parser = argparse.ArgumentParser(description = __doc__)
    parser.add_argument('-m', '--messages', dest='messages',
                        action='store_true', default=False,
                        help='One row per message instead of counts.')
    parser.add_argument('-c', '--channels', dest='channels',
                        type=lambda s: s.split(','), default=None,
                        help='Comma separated channels to keep.')
    parser.add_argument('-o', '--output', dest='output', default=None,
                        help='Write csv here.')
    parser.add_argument('-f', nargs='+', dest='filename',
                        help='Space-separated list of files to analyse.')

    options = parser.parse_args(args)

    if not options.filename:
        parser.print_help()
        sys.exit(1)

    return options


def main(args):
    """Extract tables from archived runs.

    Parameters
    ----------
    args : list of strings
        command-line arguments.

    Returns
    -------
    results : :class:`pandas.DataFrame`
        Extracted data of all files.
    """

    options = parse_args(args)
    frames = []
    for filename in options.filename:
        if options.messages:
            df = extract_messages(filename)
            if options.channels is not None:
                df = df[df.channel.isin(options.channels)]
        else:
            df = extract_counts(filename).reset_index()
            if options.channels is not None:
                df = df[['tick'] + options.channels]
        frames.append(set_info(df.copy(), get_metadata(filename)))
    results = pd.concat(frames, ignore_index=True)
    if options.output is None:
        print(results.to_string())
    else:
        results.to_csv(options.output)
    return results


if __name__ == '__main__':

    main(sys.argv[1:])
