LOGGER_NAME = "tbuchi_app"
"""str: Logger name used for app logging"""

METRICS_PORT_ENV = "TBUCHI_METRICS_PORT"
"""str: Environment variable holding the prometheus exporter port"""

LOGGING_CONFIG_ENV = "LOGGING_CONFIG"
"""str: Environment variable holding the path of a logging YAML file"""
