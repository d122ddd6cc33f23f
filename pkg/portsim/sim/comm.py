class FakeComm:
    """Single process stand-in for the MPI communicator calls used by
    :mod:`portsim.sim.calc`."""

    def __init__(self):
        self.rank = 0
        self.size = 1

    def Bcast(self, sendbuf, root=0):
        return sendbuf
    def bcast(self, sendobj, root=0):
        return sendobj
    def gather(self, sendobj, root=0):
        return [sendobj]
