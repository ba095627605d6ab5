LOGGER_NAME = "tbuchi_core"
"""str: Logger name used for library logging"""

TAU = "tau"
"""str: Label of internal transitions that never synchronise"""
