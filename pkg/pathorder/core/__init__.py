""" Worker pools and trajectory dumps shared by the simulation and checking layers. """
