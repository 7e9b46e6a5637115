from grid import ComplexGrid


class NengthGrid(ComplexGrid):
    """
    The nength G^N of a grid G: the eigenvalues of G's n-level circulant matrix laid out on G's shape.

    Equivalently the unnormalized n-dimensional forward DFT with root of unity exp(-2*pi*i/q).
    """
