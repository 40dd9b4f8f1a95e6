package pixelframe.ui;

public class ButtonWidget {
    private final String caption;
    private boolean enabled = true;

    public ButtonWidget(String caption) {
        this.caption = caption;
    }

    public void disable() {
        enabled = false;
    }

    public String caption() {
        return caption;
    }
}
