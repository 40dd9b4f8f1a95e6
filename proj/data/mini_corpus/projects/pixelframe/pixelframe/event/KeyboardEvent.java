package pixelframe.event;

public record KeyboardEvent(int keyCode, boolean shift, boolean control) {
    public boolean isShortcut() {
        return control && keyCode != 0;
    }
}
