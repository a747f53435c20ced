""" Small classes and static methods used throughout the package. """
