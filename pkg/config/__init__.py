"""
Configuration Management
Loads and validates engine configuration from environment
"""
from config.app_config import Settings, get_settings, reload_settings

__all__ = ['Settings', 'get_settings', 'reload_settings']
