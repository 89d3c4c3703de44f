from patlytics.api.app import AppState, create_app

__all__ = ["AppState", "create_app"]
