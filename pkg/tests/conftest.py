from hypothesis import settings

# property tests do real arithmetic; wall-clock deadlines only add flakiness
settings.register_profile("default", deadline=None)
settings.load_profile("default")
