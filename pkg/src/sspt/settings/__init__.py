from sspt.settings.sspt_settings import SsptSettings
