"""
Function utilities that use pandas.
"""

import pandas as pd

# enough digits for floats to survive a CSV round trip
FLOAT_FORMAT = '%.17g'


def labeled_frame(values, index, columns, **extra_columns):
    """ A DataFrame of the 2D `values` with rows `index` and columns `columns`,
    followed by one column per keyword argument.

    Raises
    ------
    ValueError
        If an extra column does not have one value per row.
    """
    df = pd.DataFrame(values, index=index, columns=columns)
    for name, column in extra_columns.items():
        if len(column) != len(df):
            raise ValueError('Column {} has {} values for {} rows.'.format(
                name, len(column), len(df)))
        df[name] = list(column)
    return df


def long_table(samples, columns, **constants):
    """ Stack a dict of 2D arrays in a long format DataFrame.

    Parameters
    ----------
    samples: dict of key -> np.ndarray
        Each value is a (rows x width) array.

    columns: 4-tuple of str
        Names of the row, key, column index and value columns.

    constants: keyword arguments
        Extra columns with a constant value.

    Returns
    -------
    df: pandas.DataFrame
        One row per array entry, sorted by key, row and column index.
    """
    row_col, key_col, idx_col, val_col = columns
    frames = []
    for key in sorted(samples):
        arr = samples[key]
        wide = pd.DataFrame(arr)
        wide.index.name = row_col
        stacked = wide.stack().reset_index()
        stacked.columns = [row_col, idx_col, val_col]
        stacked.insert(1, key_col, key)
        frames.append(stacked)

    if frames:
        df = pd.concat(frames, ignore_index=True)
    else:
        df = pd.DataFrame(columns=[row_col, key_col, idx_col, val_col])

    df = df.sort_values([row_col, key_col, idx_col], kind='mergesort').reset_index(drop=True)
    for k, v in constants.items():
        df[k] = v
    return df


def write_csv(df, filepath, **kwargs):
    """ Write `df` to `filepath` with a lossless float format."""
    kwargs.setdefault('float_format', FLOAT_FORMAT)
    kwargs.setdefault('index', False)
    df.to_csv(filepath, **kwargs)


def read_csv(filepath, **kwargs):
    """ Read a CSV written by `write_csv`, floats parsed back bit for bit."""
    kwargs.setdefault('float_precision', 'round_trip')
    return pd.read_csv(filepath, **kwargs)
