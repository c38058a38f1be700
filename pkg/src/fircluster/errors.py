"""Exception types raised by fircluster.

Everything derives from :class:`FirClusterError` (itself a ``ValueError``)
so callers and the CLI can separate data problems from programming errors.
"""


class FirClusterError(ValueError):
    pass


class ConstantFeatureError(FirClusterError):
    def __init__(self, feature):
        self.feature = feature
        super().__init__(f"feature {feature} is constant (max == min); drop it before normalizing")


class TrivialFeatureError(FirClusterError):
    def __init__(self, feature):
        self.feature = feature
        super().__init__(f"feature {feature} has zero within-cluster dispersion; remove it before rescaling")


class DegenerateDataError(FirClusterError):
    pass


class SingletonClusterError(FirClusterError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point} is alone in its cluster; silhouette undefined")


class DegenerateKError(FirClusterError):
    pass


class ZeroWCSSError(FirClusterError):
    pass


class CoincidentCentroidsError(FirClusterError):
    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"centroids {first} and {second} coincide")


class LengthMismatchError(FirClusterError):
    pass


class RankDeficientError(FirClusterError):
    pass


class AllUndefinedError(FirClusterError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"no defined correlation for index {index}")


class InvalidPartitionError(FirClusterError):
    pass
